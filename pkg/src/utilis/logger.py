"""Script to set up logging for the SI cumulants project."""
import logging
import sys
from pathlib import Path
from types import TracebackType

from google.cloud import storage

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"


class SICumulantsLogger:
    """Use this class to manage the run log: console plus a file that is uploaded to GCS on gcp runs.

    It doubles as a context manager, so the entry point can write
    ``with SICumulantsLogger(...) as logger:`` and have the handlers closed (and the
    log shipped) whatever the outcome of the run.
    """

    def __init__(self,
                 execution_env: str,
                 bucket_name: str | None,
                 folder_name: str,
                 log_file: str = "console.log",
                 level: str = "INFO",
                 console: bool = True) -> None:
        """Use to set the log location for the execution environment."""
        self.execution_env = execution_env
        self.name = "SICumulants"
        self.folder_name = folder_name
        self.log_file = log_file
        self.bucket_name = bucket_name
        self.level = logging.getLevelName(level.upper())
        self.console = console
        self._logger: logging.Logger | None = None

        if not isinstance(self.level, int):
            error = f"Unknown log level: {level}"
            raise ValueError(error)

        # /tmp is the writable location inside GCP containers
        self.local_root = "/tmp/si_cumulants" if execution_env == "gcp" else (bucket_name or "logs")  # noqa: S108
        self.log_dir = Path(self.local_root) / self.folder_name
        self.log_path = self.log_dir / self.log_file

    def setup_logger(self) -> logging.Logger:
        """Use to attach fresh console and file handlers and return the project logger."""
        logger = logging.getLogger(self.name)
        logger.setLevel(self.level)
        logger.propagate = False
        self.close_logger(logger)

        self.log_dir.mkdir(parents=True, exist_ok=True)
        formatter = logging.Formatter(fmt=LOG_FORMAT, datefmt=DATE_FORMAT)

        handlers: list[logging.Handler] = [logging.FileHandler(self.log_path)]
        if self.console:
            # stderr keeps stdout free for tables and reports
            handlers.append(logging.StreamHandler(sys.stderr))
        for handler in handlers:
            handler.setFormatter(formatter)
            logger.addHandler(handler)

        self._logger = logger
        return logger

    def close_logger(self, logger: logging.Logger) -> None:
        """Use to flush and detach every handler."""
        for handler in logger.handlers[:]:
            handler.flush()
            handler.close()
            logger.removeHandler(handler)

    def upload_log_to_gcs(self, bucket_name: str, destination_blob: str | None = None) -> str:
        """Use to upload the local log file to GCS and return the blob path."""
        if not self.log_path.exists():
            error = f"Log file not found: {self.log_path}"
            raise FileNotFoundError(error)

        blob_path = destination_blob if destination_blob is not None else f"{self.folder_name}/{self.log_file}"
        bucket = storage.Client().bucket(bucket_name)
        bucket.blob(blob_path).upload_from_filename(str(self.log_path))
        self.log_path.unlink()
        return blob_path

    def __enter__(self) -> logging.Logger:
        """Use to open the run log."""
        return self.setup_logger()

    def __exit__(self,
                 exc_type: type[BaseException] | None,
                 exc: BaseException | None,
                 tb: TracebackType | None) -> None:
        """Use to ship the log on gcp runs and close the handlers."""
        logger = self._logger
        if logger is None:
            return
        if self.execution_env == "gcp" and self.bucket_name:
            for handler in logger.handlers:
                handler.flush()
            blob_path = self.upload_log_to_gcs(self.bucket_name)
            logger.info(f"Logs uploaded to GCP at: {blob_path}")
        logger.info("Closing logger")
        self.close_logger(logger)
