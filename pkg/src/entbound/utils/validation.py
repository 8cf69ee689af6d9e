"""Turn pydantic validation failures into entbound input errors"""
from typing import Any, Type, TypeVar

from pydantic import BaseModel, ValidationError

from entbound.core.errors import SpecValidationError
from entbound.models.base import Statistics
from entbound.models.system import SystemSpec

ModelT = TypeVar("ModelT", bound=BaseModel)


def describe_validation_error(exc: ValidationError) -> str:
    """One line per violated constraint, pydantic's location prefix dropped for model-level errors"""
    lines = []
    for err in exc.errors():
        loc = ".".join(str(p) for p in err.get("loc", ()))
        msg = err.get("msg", "invalid value").removeprefix("Value error, ")
        lines.append(f"{loc}: {msg}" if loc else msg)
    return "; ".join(lines)


def build_model(model: Type[ModelT], **fields: Any) -> ModelT:
    try:
        return model(**fields)
    except ValidationError as exc:
        raise SpecValidationError(describe_validation_error(exc)) from exc


def validate_spec(L: int, M: int, n: int, statistics: "Statistics | str" = Statistics.FERMIONIC) -> SystemSpec:
    """Build a SystemSpec, raising SpecValidationError naming the violated constraint"""
    return build_model(SystemSpec, L=L, M=M, n=n, statistics=Statistics(statistics))
