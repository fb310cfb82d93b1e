"""Use to render command results and save them locally or to cloud storage."""
from __future__ import annotations

import json
from pathlib import Path
from typing import TYPE_CHECKING

import pandas as pd
from google.cloud import storage

if TYPE_CHECKING:
    from logging import Logger

FORMATS = ("json", "tsv", "dot")
REPORT_FILE = "report.json"
METADATA_FILE = "metadata.json"


def render_json(payload: object) -> str:
    """Use to serialize a payload deterministically: sorted keys, two-space indent, trailing newline."""
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False, default=str) + "\n"


def render_tsv(rows: list[dict]) -> str:
    """Use to render a list of flat rows as a tab-separated table with a header."""
    if not rows:
        return ""
    return pd.DataFrame(rows).to_csv(sep="\t", index=False, lineterminator="\n")


def render(payload: object, fmt: str, rows: list[dict] | None = None, dot: str | None = None) -> str:
    """Use to pick the rendering for the requested format; tsv needs rows and dot needs a graph."""
    if fmt == "json":
        return render_json(payload)
    if fmt == "tsv":
        if rows is None:
            error = "This command has no tabular output; use --format json."
            raise ValueError(error)
        return render_tsv(rows)
    if fmt == "dot":
        if dot is None:
            error = "Only Hasse diagrams have dot output (poset hasse)."
            raise ValueError(error)
        return dot
    error = f"Unknown format '{fmt}'; expected one of {', '.join(FORMATS)}."
    raise ValueError(error)


class ReportWriter:
    """Use this class to persist a report and its run metadata for the execution environment.

    Local runs write ``<bucket>/<folder>/<job_id>/report.json`` plus ``metadata.json``;
    gcp runs upload both blobs to the bucket; any other environment only logs.
    """

    def __init__(self, logger: Logger, execution_env: str, bucket_name: str | None) -> None:
        """Use to bind the writer to a logger and an environment."""
        self.logger = logger
        self.execution_env = execution_env
        self.bucket_name = bucket_name

    @staticmethod
    def metadata(job_id: str, ts: str, execution_env: str, command: str) -> dict:
        """Use to build the run metadata kept apart from the reproducible report."""
        return {"job_id": job_id, "created_at": ts, "execution_env": execution_env, "command": command}

    def write_to(self, path: str | Path, text: str) -> Path:
        """Use to write rendered output exactly at a path."""
        path = Path(path)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text, encoding="utf-8")
        except OSError as exc:
            error = f"Cannot write output to {path}: {exc}"
            self.logger.error(error)
            raise
        self.logger.info(f"Output written to {path}")
        return path

    def save_to_local_results(self, folder: str, job_id: str, text: str, metadata: dict) -> Path:
        """Use to save the report and its metadata under the local results folder."""
        base_path = Path(self.bucket_name or "local_results") / folder / job_id
        self.logger.info(f"Saving report to local storage at: {base_path}")
        base_path.mkdir(parents=True, exist_ok=True)
        (base_path / REPORT_FILE).write_text(text, encoding="utf-8")
        (base_path / METADATA_FILE).write_text(render_json(metadata), encoding="utf-8")
        self.logger.info("Report and metadata saved to local storage.")
        return base_path / REPORT_FILE

    def save_to_cloud_results(self, folder: str, job_id: str, text: str, metadata: dict) -> str:
        """Use to upload the report and its metadata to the bucket."""
        if not self.bucket_name:
            error = "The BUCKET_NAME environment variable is not set!"
            self.logger.error(error)
            raise ValueError(error)
        base_path = f"{folder}/{job_id}"
        self.logger.info(f"Saving report to cloud storage at: {self.bucket_name}/{base_path}")
        bucket = storage.Client().bucket(self.bucket_name)
        bucket.blob(f"{base_path}/{REPORT_FILE}").upload_from_string(text, content_type="application/json")
        bucket.blob(f"{base_path}/{METADATA_FILE}").upload_from_string(render_json(metadata), content_type="application/json")
        self.logger.info("Report and metadata saved to cloud storage.")
        return f"{base_path}/{REPORT_FILE}"

    def save(self, folder: str, job_id: str, text: str, metadata: dict) -> str | None:
        """Use to save a report where the execution environment keeps results."""
        if self.execution_env == "local":
            return str(self.save_to_local_results(folder, job_id, text, metadata))
        if self.execution_env == "gcp":
            return self.save_to_cloud_results(folder, job_id, text, metadata)
        self.logger.warning(f"Running in unknown environment: {self.execution_env}. Report will not be saved.")
        return None
