from typing import Any, Optional

from .base_model import BaseModel
from ..utils.rational import Rational


class SchemeEntry(BaseModel):
    id: str
    hash: str
    document: dict[str, Any]


class InputEntry(BaseModel):
    name: str
    sha256: Optional[str] = None


class OutputEntry(BaseModel):
    name: str
    sha256: str


class RunManifest(BaseModel):
    """Everything needed to reproduce one CLI run."""

    command: str
    tool_version: str
    timestamp: str
    schemes: tuple[SchemeEntry, ...] = ()
    inputs: tuple[InputEntry, ...] = ()
    policy: Optional[str] = None
    flags: dict[str, Any] = {}
    k: Optional[Rational] = None
    outputs: tuple[OutputEntry, ...] = ()
