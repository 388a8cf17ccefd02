from .ingest import MissingDataPolicy, Provenance, ingest
from .population import Population, adults, headship
