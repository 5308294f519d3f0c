EXIT_SUCCESS = 0
EXIT_CLAIM_FAILED = 1
EXIT_ERROR = 2

REPORT_EXTENSIONS = {
    'csv': '.csv',
    'json': '.json'
}

PROFILE_OUTPUT_FILE = "profile_results.prof"
