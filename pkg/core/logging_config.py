"""
Logging Configuration Module
Sets up application logging to the user data directory
"""

import logging
import sys
from datetime import datetime, timedelta

import config
from .resource_manager import ResourceManager


def setup_logging(log_level: int = logging.INFO,
                  console_level: int = logging.WARNING,
                  log_to_file: bool = True) -> logging.Logger:
    """
    Configure application logging

    Args:
        log_level: Root logging level (default: INFO)
        console_level: Level for the stderr handler (default: WARNING)
        log_to_file: Also write a daily log file in the user log directory

    Returns:
        Configured root logger
    """
    formatter = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )

    root_logger = logging.getLogger()
    root_logger.setLevel(min(log_level, console_level))

    # Remove any existing handlers
    root_logger.handlers.clear()

    log_file = None
    if log_to_file:
        resource_manager = ResourceManager()
        log_dir = resource_manager.get_log_dir()
        log_file = log_dir / f"erpointlikes_{datetime.now().strftime('%Y%m%d')}.log"

        # File handler - logs everything at or above log_level
        file_handler = logging.FileHandler(log_file, encoding='utf-8')
        file_handler.setLevel(log_level)
        file_handler.setFormatter(formatter)
        root_logger.addHandler(file_handler)

    # Console handler - stdout carries results, so diagnostics go to stderr
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(console_level)
    console_handler.setFormatter(formatter)
    root_logger.addHandler(console_handler)

    logger = logging.getLogger(__name__)
    logger.info("=" * 60)
    logger.info(f"{config.APP_NAME} {config.get_version_string()} starting")
    if log_file is not None:
        logger.info(f"Log file: {log_file}")
    logger.info("=" * 60)

    return root_logger


def log_exception(logger: logging.Logger, exception: Exception, context: str = ""):
    """
    Log an exception with full traceback

    Args:
        logger: Logger instance
        exception: Exception to log
        context: Optional context description
    """
    if context:
        logger.error(f"{context}: {str(exception)}", exc_info=True)
    else:
        logger.error(f"Exception occurred: {str(exception)}", exc_info=True)


def clean_old_logs(days_to_keep: int = 30):
    """
    Delete log files older than specified days

    Args:
        days_to_keep: Number of days of logs to retain
    """
    try:
        log_dir = ResourceManager().get_log_dir()
        cutoff_date = datetime.now() - timedelta(days=days_to_keep)

        for log_file in log_dir.glob("erpointlikes_*.log"):
            try:
                mtime = datetime.fromtimestamp(log_file.stat().st_mtime)
                if mtime < cutoff_date:
                    log_file.unlink()
                    logging.info(f"Deleted old log file: {log_file.name}")
            except OSError as e:
                logging.warning(f"Could not delete log file {log_file.name}: {e}")

    except OSError as e:
        logging.error(f"Error cleaning old logs: {e}")
