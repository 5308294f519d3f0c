import json, os, logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Union
import numpy as np
import pandas as pd
from .exceptions import ReportFormatError, ReportReadError, ReportWriteError
from .report_format import ReportFormat

SCHEMA_TAG = "thin_channel_lab.report"
FLOAT_FORMAT = "%.17g"

@dataclass(eq=False)
class LoadedReport:
    table: pd.DataFrame
    experiment: Optional[str] = None
    config: Dict[str, Any] = field(default_factory=dict)
    fits: Dict[str, Any] = field(default_factory=dict)
    claims: List[Dict[str, Any]] = field(default_factory=list)
    metadata: Dict[str, Any] = field(default_factory=dict)

def resolve_format(report_format: Union[str, ReportFormat]) -> ReportFormat:
    if isinstance(report_format, ReportFormat):
        return report_format
    try:
        return ReportFormat.from_string(str(report_format))
    except ValueError:
        raise ReportFormatError(report_format)

def _plain(value):
    """json default hook for numpy scalars and arrays."""
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    if hasattr(value, "value"):
        return value.value
    raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable")

def fit_summary(fit) -> Dict[str, Any]:
    """Plain-type view of a RateFit with (eps, value, fitted) triples of the preferred model."""
    return {
        "preferred": fit.preferred.value,
        "p": fit.p,
        "C": fit.C,
        "residual": fit.residual,
        "models": {model.value: {"p": item.p, "C": item.C, "residual": item.residual, "spread": item.spread} for model, item in fit.fits.items()},
        "curve": [list(triple) for triple in fit.curve()],
    }

def report_payload(
    table: pd.DataFrame,
    experiment: Optional[str] = None,
    config: Optional[Dict[str, Any]] = None,
    fits: Optional[Dict[str, Any]] = None,
    claims: Optional[List[Any]] = None,
    metadata: Optional[Dict[str, Any]] = None
) -> Dict[str, Any]:
    config = config or {}
    return {
        "schema": f"{SCHEMA_TAG}/{config.get('schema_version', '1.0')}",
        "experiment": experiment,
        "config": config,
        "columns": list(table.columns),
        "rows": table.to_dict(orient="records"),
        "fits": {name: fit if isinstance(fit, dict) else fit_summary(fit) for name, fit in (fits or {}).items()},
        "claims": [claim if isinstance(claim, dict) else claim.as_dict() for claim in (claims or [])],
        "metadata": metadata or {},
    }

def emit_report(
    table: pd.DataFrame,
    report_format: Union[str, ReportFormat],
    path: str,
    experiment: Optional[str] = None,
    config: Optional[Dict[str, Any]] = None,
    fits: Optional[Dict[str, Any]] = None,
    claims: Optional[List[Any]] = None,
    metadata: Optional[Dict[str, Any]] = None
) -> str:
    """
    Writes the table as CSV (fixed column order, 17 significant digits) or as a JSON document
    carrying the schema tag, the configuration echo, the fits and the claim checks.

    Returns:
        str: The path written.

    Raises:
        ReportFormatError: If the format is not csv or json.
        ReportWriteError: On any I/O failure, naming the path.
    """
    report_format = resolve_format(report_format)
    if table.empty:
        raise ValueError("Refusing to emit an empty report table")

    try:
        directory = os.path.dirname(path)
        if directory:
            os.makedirs(directory, exist_ok=True)

        if report_format == ReportFormat.CSV:
            table.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
        else:
            payload = report_payload(table, experiment, config, fits, claims, metadata)
            with open(path, 'w') as json_file:
                json.dump(payload, json_file, indent=2, default=_plain)
                json_file.write("\n")

    except OSError as e:
        logging.error(f"Failed to write report to {path}: {e}")
        raise ReportWriteError(path, e)

    logging.info(f"Report ({report_format.value}, {len(table)} rows) written to {path}")
    return path

def load_report(path: str) -> LoadedReport:
    """
    Reads a report written by emit_report; the format follows the file extension.

    Raises:
        ReportFormatError: If the extension is neither .csv nor .json.
        ReportReadError: If the file cannot be read or parsed.
    """
    extension = os.path.splitext(path)[1].lstrip(".").lower()
    report_format = resolve_format(extension)

    try:
        if report_format == ReportFormat.CSV:
            table = pd.read_csv(path)
            if "reason" in table:
                table["reason"] = table["reason"].fillna("")
            return LoadedReport(table)

        with open(path, 'r') as json_file:
            payload = json.load(json_file)

    except (OSError, ValueError) as e:
        logging.error(f"Failed to read report {path}: {e}")
        raise ReportReadError(path, e)

    if not isinstance(payload, dict) or not str(payload.get("schema", "")).startswith(SCHEMA_TAG):
        raise ReportReadError(path, "missing schema tag")

    table = pd.DataFrame(payload.get("rows", []), columns=payload.get("columns"))
    return LoadedReport(
        table,
        payload.get("experiment"),
        payload.get("config", {}),
        payload.get("fits", {}),
        payload.get("claims", []),
        payload.get("metadata", {}),
    )
