from typing import Any, Callable

EXIT_CONTRACT = 1
EXIT_USAGE = 2


class AfmpiError(Exception):
    """Base error; carries a machine-readable code and the CLI exit code."""

    code = "afmpi_error"
    exit_code = EXIT_USAGE

    def __init__(self, message: str = "", **context: Any):
        super().__init__(message or self.code)
        self.message = message or self.code
        self.context = context

    def to_dict(self) -> dict:
        return {"code": self.code, "message": self.message, "context": self.context}


class NotFoundError(AfmpiError):
    code = "not_found"

    def __init__(self, message="Resource not found", **context):
        super().__init__(message, **context)


class Violation:
    """One failed scheme check."""

    __slots__ = ("reason", "detail")

    def __init__(self, reason: str, detail: str):
        self.reason = reason
        self.detail = detail

    def __repr__(self):
        return f"Violation({self.reason!r}, {self.detail!r})"

    def to_dict(self):
        return {"reason": self.reason, "detail": self.detail}


class SchemeInvalid(AfmpiError):
    code = "scheme_invalid"

    def __init__(self, violations: list[Violation], scheme_id: str | None = None):
        self.violations = list(violations)
        message = "; ".join(f"{v.reason}: {v.detail}" for v in self.violations)
        super().__init__(
            message or "scheme invalid",
            scheme_id=scheme_id,
            violations=[v.to_dict() for v in self.violations],
        )

    @classmethod
    def single(cls, reason: str, detail: str, scheme_id: str | None = None):
        return cls([Violation(reason, detail)], scheme_id=scheme_id)

    @property
    def reasons(self) -> set[str]:
        return {v.reason for v in self.violations}

    @property
    def reason(self) -> str:
        return self.violations[0].reason


class SchemeMismatch(AfmpiError):
    code = "scheme_mismatch"


class IngestError(AfmpiError):
    code = "ingest_error"

    def __init__(self, message: str, row: int | None = None, column: str | None = None, **context):
        self.row = row
        self.column = column
        super().__init__(message, row=row, column=column, **context)


class IntegrityError(AfmpiError):
    code = "integrity_error"


class BadCutoffs(AfmpiError):
    code = "bad_cutoffs"


class TooLarge(AfmpiError):
    code = "too_large"


class ConfigError(AfmpiError):
    code = "config_error"


class UsageError(AfmpiError):
    code = "usage_error"


class ContractViolation(AfmpiError):
    code = "contract_violation"
    exit_code = EXIT_CONTRACT


class EmptyPoorSet(AfmpiError):
    code = "empty_poor_set"
    exit_code = EXIT_CONTRACT


class PartitionError(AfmpiError):
    code = "partition_error"
    exit_code = EXIT_CONTRACT


class EmptyPopulation(AfmpiError):
    code = "empty_population"
    exit_code = EXIT_CONTRACT


def afmpi_exception_handler(exc: AfmpiError) -> tuple[int, dict]:
    return exc.exit_code, exc.to_dict()


def file_not_found_handler(exc: FileNotFoundError) -> tuple[int, dict]:
    return EXIT_USAGE, {
        "code": "file_not_found",
        "message": str(exc),
        "context": {"path": getattr(exc, "filename", None)},
    }


exception_handlers: dict[type[BaseException], Callable[[Any], tuple[int, dict]]] = {
    AfmpiError: afmpi_exception_handler,
    FileNotFoundError: file_not_found_handler,
}


def handle_exception(exc: BaseException) -> tuple[int, dict] | None:
    """Resolve the handler for ``exc`` by walking its MRO."""
    for exc_class in type(exc).__mro__:
        handler = exception_handlers.get(exc_class)
        if handler is not None:
            return handler(exc)
    return None
