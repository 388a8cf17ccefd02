import os
from datetime import datetime, timezone
from typing import Iterable, Optional

from .. import __version__
from ..models.manifest import InputEntry, OutputEntry, RunManifest, SchemeEntry
from ..models.scheme import MeasurementScheme
from ..schemes.loader import scheme_hash, scheme_to_document
from ..utils.file_operations import source_hash, source_name

MANIFEST_NAME = "manifest.json"


def run_timestamp() -> str:
    """UTC ISO timestamp, pinned by ``SOURCE_DATE_EPOCH`` when set."""
    epoch = os.getenv("SOURCE_DATE_EPOCH")
    moment = datetime.fromtimestamp(int(epoch), tz=timezone.utc) if epoch else datetime.now(timezone.utc)
    return moment.replace(microsecond=0).isoformat()


def scheme_entry(scheme: MeasurementScheme) -> SchemeEntry:
    return SchemeEntry(id=scheme.id, hash=scheme_hash(scheme), document=scheme_to_document(scheme))


def input_entry(source) -> InputEntry:
    return InputEntry(name=source_name(source), sha256=source_hash(source))


def build_manifest(
    command: str,
    schemes: Iterable[MeasurementScheme] = (),
    inputs: Iterable = (),
    policy: Optional[str] = None,
    flags: Optional[dict] = None,
    k=None,
    outputs: Iterable[OutputEntry] = (),
) -> RunManifest:
    return RunManifest(
        command=command,
        tool_version=__version__,
        timestamp=run_timestamp(),
        schemes=tuple(scheme_entry(s) for s in schemes),
        inputs=tuple(input_entry(source) for source in inputs),
        policy=policy,
        flags=flags or {},
        k=k,
        outputs=tuple(outputs),
    )
