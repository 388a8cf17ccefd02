from enum import Enum
from typing import Optional

from .base_model import BaseModel


class Sex(str, Enum):
    MALE = "male"
    FEMALE = "female"


class Unit(str, Enum):
    HOUSEHOLD = "household"
    INDIVIDUAL = "individual"


class FloorMaterial(str, Enum):
    EARTH_MUD = "earth_mud"
    FINISHED = "finished"
    OTHER = "other"


class Toilet(str, Enum):
    NONE = "none"
    SHARED = "shared"
    PRIVATE = "private"


class WaterSource(str, Enum):
    PIPED = "piped"
    BOREWELL = "borewell"
    CLOSED_WELL = "closed_well"
    OPEN_WELL = "open_well"
    SURFACE = "surface"
    TANKER = "tanker"
    OTHER = "other"


class CookingFuel(str, Enum):
    ELECTRICITY = "electricity"
    LPG = "lpg"
    BIOGAS = "biogas"
    WOOD = "wood"
    CHARCOAL = "charcoal"
    DUNG = "dung"
    OTHER = "other"


class Durable(str, Enum):
    FAN = "fan"
    TV = "tv"
    CELL_PHONE = "cell_phone"
    CYCLE = "cycle"
    REFRIGERATOR = "refrigerator"
    TWO_WHEELER = "two_wheeler"


class MaritalStatus(str, Enum):
    NEVER_MARRIED = "never_married"
    CURRENTLY_MARRIED = "currently_married"
    WIDOWED = "widowed"
    DESERTED = "deserted"
    OTHER = "other"


class HealthDecision(str, Enum):
    SELF = "self"
    WITH_PERMISSION = "with_permission"
    SOMEONE_ELSE = "someone_else"


class Mobility(BaseModel):
    """Female respondent's answers; ``None`` only outside the active scheme's scope."""

    market_alone: Optional[bool] = None
    health_facility_alone: Optional[bool] = None
    natal_home_alone: Optional[bool] = None
    outside_village_alone: Optional[bool] = None
    own_health_decision: Optional[HealthDecision] = None


class Child(BaseModel):
    child_id: str
    enrolled: Optional[bool] = None


class HouseholdRecord(BaseModel):
    hh_id: str
    head_sex: Sex
    has_electricity: Optional[bool] = None
    floor_material: Optional[FloorMaterial] = None
    toilet: Optional[Toilet] = None
    water_source: Optional[WaterSource] = None
    cooking_fuel: Optional[CookingFuel] = None
    durables_owned: Optional[frozenset[Durable]] = None
    owns_four_wheeler: Optional[bool] = None
    owns_agri_land: Optional[bool] = None
    owns_residence: Optional[bool] = None
    children_5_9: tuple[Child, ...] = ()


class PersonRecord(BaseModel):
    person_id: str
    hh_id: str
    sex: Sex
    age: int
    marital_status: Optional[MaritalStatus] = None
    education_years: Optional[int] = None
    owns_residence_any: Optional[bool] = None
    owns_agri_land_any: Optional[bool] = None
    enrolled: Optional[bool] = None
    is_female_respondent: bool = False
    respondent_rank: int = 1
    mobility: Optional[Mobility] = None

    @property
    def is_adult(self) -> bool:
        return self.age >= 18
