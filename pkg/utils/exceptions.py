class ReportError(Exception):
    """Base class for report emission and loading errors."""
    pass

class ReportFormatError(ReportError):
    def __init__(self, report_format, message="Unsupported report format"):
        self.report_format = report_format
        self.message = f"{message}: '{report_format}'"
        super().__init__(self.message)

class ReportWriteError(ReportError):
    def __init__(self, path, original_exception, message="Failed to write report"):
        self.path = path
        self.original_exception = original_exception
        self.message = f"{message} {path}: {original_exception}"
        super().__init__(self.message)

class ReportReadError(ReportError):
    def __init__(self, path, original_exception, message="Failed to read report"):
        self.path = path
        self.original_exception = original_exception
        self.message = f"{message} {path}: {original_exception}"
        super().__init__(self.message)
