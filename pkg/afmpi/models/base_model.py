from pydantic import BaseModel as PydanticBaseModel, ConfigDict


class BaseModel(PydanticBaseModel):
    """
    Immutable base for afmpi value objects. Instances are safe to share
    between readers once validated.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    def to_dict(self) -> dict:
        return self.model_dump(mode="json")
