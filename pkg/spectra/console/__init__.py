from .console import console, err_console, setup_logging
from .console_results import log_report
