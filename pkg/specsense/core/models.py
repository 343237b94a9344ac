from typing import Annotated, Any

import numpy as np
from pydantic import BaseModel, ConfigDict, PlainSerializer, PlainValidator


class ForbidExtraModel(BaseModel):
    """Class configuring the BaseModel by forbidding extra fields and freezing instances."""

    model_config = ConfigDict(extra='forbid', frozen=True, arbitrary_types_allowed=True)


def as_matrix(value: Any) -> np.ndarray:
    """
    Converts nested sequences (or a scalar) into a read-only two-dimensional float array.
    :param value: Nested row-major sequence, numpy array or scalar.
    :return: Read-only float matrix.
    """
    matrix = np.array(value, dtype=float)
    if matrix.ndim == 0:
        matrix = matrix.reshape(1, 1)
    if matrix.ndim != 2:
        raise ValueError(f"Expected a matrix, got an array with {matrix.ndim} dimension(s).")
    matrix.setflags(write=False)
    return matrix


def as_vector(value: Any) -> np.ndarray:
    """
    Converts a sequence (or a scalar) into a read-only one-dimensional float array.
    :param value: Sequence, numpy array or scalar.
    :return: Read-only float vector.
    """
    vector = np.array(value, dtype=float).reshape(-1)
    vector.setflags(write=False)
    return vector


def to_nested_list(value: np.ndarray) -> list[Any]:
    """Serializes an array as nested lists."""
    return value.tolist()


Matrix = Annotated[np.ndarray, PlainValidator(as_matrix), PlainSerializer(to_nested_list, return_type=list)]
Vector = Annotated[np.ndarray, PlainValidator(as_vector), PlainSerializer(to_nested_list, return_type=list)]
