from .loader import (
    BUILTIN_SCHEMES,
    builtin_scheme,
    load_scheme,
    scheme_from_document,
    scheme_hash,
    scheme_to_document,
)
from .transforms import derived_id, exclude_dimension, exclude_indicator
