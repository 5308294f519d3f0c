from enum import Enum

class ReportFormat(Enum):
    CSV = "csv"
    JSON = "json"

    @staticmethod
    def from_string(report_format_str: str):
        try:
            return ReportFormat(report_format_str)
        except ValueError:
            raise ValueError(f"Invalid report format: '{report_format_str}'. Available formats are: {', '.join([fmt.value for fmt in ReportFormat])}")
