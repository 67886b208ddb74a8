"""
Utility functions for the cone certification toolkit
File loading (JSON or CSV) with positioned errors, and JSON output
"""
import csv
import json
import logging
import os
import sys
from typing import List, Optional, Type, TypeVar

import numpy as np
from pydantic import BaseModel, TypeAdapter, ValidationError

from .exceptions import InputFileError
from .schemas import ComplexList, ConeSpecFile, MatrixFile, VectorsFile

logger = logging.getLogger(__name__)

SUPPORTED_FORMATS = ("json", "csv")

FileModel = TypeVar("FileModel", bound=BaseModel)


def detect_format(path: str, fmt: Optional[str] = None) -> str:
    """
    Resolve the input format.

    Args:
        path: Input file path
        fmt: Explicit format, or None to infer from the extension

    Returns:
        "json" or "csv"
    """
    if fmt:
        fmt = fmt.lower()
        if fmt not in SUPPORTED_FORMATS:
            raise InputFileError(f"unsupported format '{fmt}', expected one of {', '.join(SUPPORTED_FORMATS)}")
        return fmt
    extension = os.path.splitext(path)[1].lower().lstrip(".")
    return extension if extension in SUPPORTED_FORMATS else "json"


def _read_text(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return f.read()
    except OSError as e:
        raise InputFileError(f"cannot read {path}: {e.strerror or e}") from e


def _validation_to_input_error(error: ValidationError, key: str) -> InputFileError:
    """First pydantic error, with 1-based row/column taken from its location"""
    first = error.errors()[0]
    loc = [part for part in first["loc"] if part != key]
    indices = [part for part in loc if isinstance(part, int)]
    row = indices[0] + 1 if len(indices) > 0 else None
    column = indices[1] + 1 if len(indices) > 1 else None
    return InputFileError(first["msg"], row=row, column=column)


def _csv_rows(text: str) -> List[List[dict]]:
    """Rows of interleaved re,im cells; blank and '#' lines are skipped"""
    rows: List[List[dict]] = []
    for line_number, cells in enumerate(csv.reader(text.splitlines()), start=1):
        cells = [c.strip() for c in cells]
        if not cells or all(c == "" for c in cells) or cells[0].startswith("#"):
            continue
        if len(cells) % 2:
            raise InputFileError(f"expected re,im pairs but found {len(cells)} columns", row=line_number)
        values = []
        for column, cell in enumerate(cells, start=1):
            try:
                values.append(float(cell))
            except ValueError:
                raise InputFileError(f"'{cell}' is not a number", row=line_number, column=column)
        rows.append([{"re": values[i], "im": values[i + 1]} for i in range(0, len(values), 2)])
    return rows


def _load(path: str, model: Type[FileModel], key: str, fmt: Optional[str]) -> FileModel:
    text = _read_text(path)
    if detect_format(path, fmt) == "csv":
        data = {key: _csv_rows(text)}
    else:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise InputFileError(f"invalid JSON: {e.msg}", row=e.lineno, column=e.colno) from e
        if isinstance(data, list):
            data = {key: data}
    try:
        parsed = model.model_validate(data)
    except ValidationError as e:
        raise _validation_to_input_error(e, key) from e
    logger.debug(f"Loaded {key} from {path}")
    return parsed


def load_matrix(path: str, fmt: Optional[str] = None) -> np.ndarray:
    """Square complex matrix from a JSON {"matrix": ...} or CSV (2n columns) file"""
    return _load(path, MatrixFile, "matrix", fmt).to_array()


def load_vectors(path: str, fmt: Optional[str] = None) -> np.ndarray:
    """Vectors as the rows of a complex array"""
    return _load(path, VectorsFile, "vectors", fmt).to_array()


def load_cone_spec(path: str, fmt: Optional[str] = None) -> np.ndarray:
    """Functionals as the rows of a complex array"""
    return _load(path, ConeSpecFile, "functionals", fmt).to_array()


def parse_vector(text: str) -> np.ndarray:
    """A vector given inline as JSON, e.g. '[1, {"re": 0, "im": 1}]'"""
    try:
        entries = TypeAdapter(ComplexList).validate_json(text)
    except ValidationError as e:
        raise _validation_to_input_error(e, "vector") from e
    if not entries:
        raise InputFileError("vector must be non-empty")
    return np.array([z.to_complex() for z in entries], dtype=np.complex128)


def emit(response: BaseModel) -> None:
    """Write a response model to stdout as indented JSON"""
    sys.stdout.write(response.model_dump_json(indent=2))
    sys.stdout.write("\n")
    sys.stdout.flush()
