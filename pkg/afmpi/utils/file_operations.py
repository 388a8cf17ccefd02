import hashlib
import io
import os
from pathlib import Path


def sha256_file(file_path) -> str:
    digest = hashlib.sha256()
    with open(file_path, "rb") as f:
        for chunk in iter(lambda: f.read(1 << 16), b""):
            digest.update(chunk)
    return digest.hexdigest()


def sha256_text(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def source_name(source) -> str:
    """Human-readable name for a path or an in-memory stream."""
    if isinstance(source, (str, os.PathLike)):
        return str(source)
    return getattr(source, "name", "<buffer>")


def source_hash(source) -> str | None:
    if isinstance(source, (str, os.PathLike)) and os.path.exists(source):
        return sha256_file(source)
    if isinstance(source, io.StringIO):
        return sha256_text(source.getvalue())
    return None


def write_text(file_path, content: str) -> Path:
    """Write UTF-8 text with LF line endings, creating parent directories."""
    path = Path(file_path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(content)
    return path
