from .base_model import BaseModel
from .records import *
from .scheme import AppliesTo, DimensionSpec, IndicatorSpec, MeasurementScheme
from .tables import *
from .manifest import InputEntry, OutputEntry, RunManifest, SchemeEntry
