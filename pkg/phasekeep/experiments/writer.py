"""Write run results and plan tables to disk."""

from __future__ import annotations

import json
import logging
from enum import Enum
from pathlib import Path
from typing import Any

import pandas as pd

from .models import RunResult

logger = logging.getLogger(__name__)


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"
    BOTH = "both"


class ResultWriter:
    """Write tables as CSV and/or JSON under one output directory.

    Every file starts with the SHA-256 of the config that produced it and the
    seed, so a result can be traced back to its invocation. Nothing
    time-dependent is written: the same invocation gives byte-identical files.
    """

    def __init__(
        self,
        out_dir: Path,
        config_digest: str,
        output_format: OutputFormat = OutputFormat.BOTH,
    ):
        self.out_dir = out_dir
        self.config_digest = config_digest
        self.output_format = OutputFormat(output_format)

    def _ensure_dirs(self) -> None:
        self.out_dir.mkdir(parents=True, exist_ok=True)

    def _header(self, seed: int | None) -> dict[str, Any]:
        header: dict[str, Any] = {"config_sha256": self.config_digest}
        if seed is not None:
            header["seed"] = seed
        return header

    def _write_csv(self, path: Path, table: pd.DataFrame, header: dict[str, Any]) -> None:
        with open(path, "w", encoding="utf-8", newline="") as f:
            for key, value in header.items():
                f.write(f"# {key}={value}\n")
            table.to_csv(f, index=False, lineterminator="\n", float_format="%.12g")

    def _write_json(self, path: Path, payload: dict[str, Any]) -> None:
        with open(path, "w", encoding="utf-8") as f:
            json.dump(payload, f, indent=2, ensure_ascii=False, allow_nan=True)
            f.write("\n")

    def write_table(
        self,
        stem: str,
        table: pd.DataFrame,
        seed: int | None = None,
        extra: dict[str, Any] | None = None,
    ) -> list[Path]:
        """Write one table as ``<stem>.csv`` and/or ``<stem>.json``.

        Returns:
            Paths written, CSV first.
        """
        self._ensure_dirs()
        header = self._header(seed)
        written: list[Path] = []

        if self.output_format in (OutputFormat.CSV, OutputFormat.BOTH):
            path = self.out_dir / f"{stem}.csv"
            self._write_csv(path, table, header)
            written.append(path)

        if self.output_format in (OutputFormat.JSON, OutputFormat.BOTH):
            path = self.out_dir / f"{stem}.json"
            payload = {
                **header,
                **(extra or {}),
                "columns": list(table.columns),
                "rows": json.loads(table.to_json(orient="records", double_precision=15)),
            }
            self._write_json(path, payload)
            written.append(path)

        for path in written:
            logger.info(f"Wrote {path}")
        return written

    def write_document(self, stem: str, key: str, document: Any, seed: int | None = None) -> Path:
        """Write ``<stem>.json`` holding the header and ``document`` under ``key``.

        ``seed`` is always present in the header; null means nothing random
        was drawn.
        """
        self._ensure_dirs()
        path = self.out_dir / f"{stem}.json"
        self._write_json(path, {"config_sha256": self.config_digest, "seed": seed, key: document})
        logger.info(f"Wrote {path}")
        return path

    def write_run(self, result: RunResult) -> list[Path]:
        """Write a scenario result as ``<scenario>_<seed>.csv|json``."""
        extra = {
            "scenario": result.scenario.value,
            "summary": result.summary,
            "fits": {name: fit.as_dict() for name, fit in result.fits.items()},
        }
        return self.write_table(
            f"{result.scenario.value}_{result.seed}", result.table, result.seed, extra
        )
