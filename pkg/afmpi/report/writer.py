import json
from pathlib import Path
from typing import Iterable, Optional, Sequence

import pandas as pd

from ..exceptions import UsageError
from ..logger import logger
from ..models.manifest import OutputEntry, RunManifest
from ..utils.file_operations import sha256_file, write_text
from .manifest import MANIFEST_NAME

FORMATS = {"csv": ("csv",), "json": ("json",), "both": ("csv", "json")}


def to_json(document) -> str:
    return json.dumps(document, indent=2, ensure_ascii=False) + "\n"


def rows_to_csv(rows: list[dict], columns: Optional[Sequence[str]] = None) -> str:
    frame = pd.DataFrame(rows, columns=columns, dtype=object)
    return frame.to_csv(index=False, lineterminator="\n")


class ReportWriter:
    """
    Writes the tables of one run into ``out_dir`` and keeps track of every
    file so the manifest can list them with their hashes.
    """

    def __init__(self, out_dir, fmt: str = "both"):
        if fmt not in FORMATS:
            raise UsageError(f"Unknown output format '{fmt}'", allowed=list(FORMATS))
        self.out_dir = Path(out_dir)
        self.formats = FORMATS[fmt]
        self.written: list[Path] = []

    def _record(self, path: Path) -> Path:
        self.written.append(path)
        logger.debug(f"Wrote {path}")
        return path

    def write_table(
        self,
        name: str,
        rows: list[dict],
        columns: Optional[Sequence[str]] = None,
        footnotes: Iterable[str] = (),
        **extra,
    ) -> list[Path]:
        paths = []
        if "csv" in self.formats:
            paths.append(self._record(write_text(self.out_dir / f"{name}.csv", rows_to_csv(rows, columns))))
        if "json" in self.formats:
            document = {"manifest": MANIFEST_NAME, "table": name, **extra}
            footnotes = list(footnotes)
            if footnotes:
                document["footnotes"] = footnotes
            document["rows"] = rows
            paths.append(self._record(write_text(self.out_dir / f"{name}.json", to_json(document))))
        return paths

    def write_document(self, name: str, document: dict) -> Path:
        """A JSON sidecar that is not a table (e.g. ingest provenance)."""
        return self._record(write_text(self.out_dir / name, to_json({"manifest": MANIFEST_NAME, **document})))

    def outputs(self) -> tuple[OutputEntry, ...]:
        return tuple(OutputEntry(name=path.name, sha256=sha256_file(path)) for path in self.written)

    def write_manifest(self, manifest: RunManifest) -> Path:
        path = write_text(self.out_dir / MANIFEST_NAME, to_json(manifest.to_dict()))
        logger.info(f"Run manifest written to {path} ({len(manifest.outputs)} outputs)")
        return path
