from config.config_manager import ConfigManager
from config.config_validator import ConfigValidator
from config.exceptions import ConfigError
from experiments.experiment_factory import ExperimentFactory
from experiments.experiment_result import ExperimentResult
from experiments.experiment_type import ExperimentType
from utils.arg_parser import parse_and_validate_console_args
import cProfile, asyncio, dataclasses, logging, os, sys
from typing import Optional
from dotenv import load_dotenv

from config.experiment_config import ExperimentConfig
from utils.constants import EXIT_ERROR, PROFILE_OUTPUT_FILE, REPORT_EXTENSIONS
from utils.logging_config import setup_logging
from utils.report_format import ReportFormat
from utils.report_writer import emit_report
from utils.run_name_generator import generate_run_name


def initialize_config(config_path: str) -> Optional[ConfigManager]:
    load_dotenv()
    try:
        return ConfigManager(config_path, ConfigValidator())
    except ConfigError as e:
        logging.error(f"An error occurred during the initialization of ConfigManager {e}")
        return None

def apply_overrides(config: ExperimentConfig, args) -> ExperimentConfig:
    """CLI flags win over the configuration file; replace() re-runs the config checks."""
    overrides = {}
    if args.eps is not None:
        overrides["eps_list"] = tuple(args.eps)
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.threads is not None:
        overrides["threads"] = args.threads
    if args.format is not None:
        overrides["output_format"] = ReportFormat.from_string(args.format)
    return dataclasses.replace(config, **overrides) if overrides else config

def report_path(config: ExperimentConfig, subcommand: str, out: Optional[str]) -> str:
    if out:
        return out
    return os.path.join(config.output_directory, f"{subcommand}{REPORT_EXTENSIONS[config.output_format.value]}")

def write_result(result: ExperimentResult, config: ExperimentConfig, path: str):
    emit_report(
        result.table,
        config.output_format,
        path,
        experiment=result.experiment.value,
        config=result.config_echo or config.summary(),
        fits=result.fits,
        claims=result.claims,
        metadata=result.metadata
    )


async def run_experiment(args) -> int:
    config_manager = initialize_config(args.config)
    if config_manager is None:
        return EXIT_ERROR

    run_name = generate_run_name(config_manager, args.subcommand)
    setup_logging(config_manager.get_logging_level(), config_manager.should_log_to_file(), run_name)

    try:
        config = apply_overrides(config_manager.build_experiment_config(), args)
        experiment = ExperimentFactory.create(ExperimentType.from_string(args.subcommand), config, input_path=args.input)
        logging.info(f"Running {args.subcommand} over eps={list(config.eps_list)} with seed {config.seed} and {config.threads} thread(s)")

        if args.profile:
            profiler = cProfile.Profile()
            profiler.enable()
            result = await experiment.run()
            profiler.disable()
            profiler.dump_stats(PROFILE_OUTPUT_FILE)
        else:
            result = await experiment.run()

        write_result(result, config, report_path(config, args.subcommand, args.out))

    except ConfigError as e:
        logging.error(f"Invalid configuration: {e}")
        return EXIT_ERROR

    except asyncio.CancelledError:
        logging.info("Cancellation received. Shutting down gracefully.")
        return EXIT_ERROR

    except Exception as e:
        logging.error(f"An unexpected error occurred: {e}", exc_info=True)
        return EXIT_ERROR

    logging.info(f"{args.subcommand}: {'all claim checks passed' if result.passed else 'a claim check FAILED'}")
    return result.exit_code


def main(cli_args=None) -> int:
    try:
        args = parse_and_validate_console_args(cli_args)
    except RuntimeError as e:
        logging.error(f"{e}")
        return EXIT_ERROR

    return asyncio.run(run_experiment(args))

if __name__ == "__main__":
    sys.exit(main())
