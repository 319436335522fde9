import logging
import sys

from .cli import run
from .config import settings
from .core.log_configs import get_logger


def setup_logging():
    """Configure logging settings"""
    get_logger(settings.LOG_LEVEL)


def main():
    """Main entry point"""
    setup_logging()
    logging.getLogger(__name__).debug(f"Arguments: {sys.argv[1:]}")
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
