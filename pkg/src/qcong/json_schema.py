"""Generate JSON Schema for custom case files."""

from __future__ import annotations

import json
from typing import Any

from qcong.models import CustomCaseFile

JSON_SCHEMA_URL = "https://json-schema.org/draft/2020-12/schema"


def case_file_schema() -> dict[str, Any]:
    """Returns the JSON Schema for the custom case file model.

    Returns:
      A dictionary containing the JSON Schema with $schema field set.
    """
    schema = CustomCaseFile.model_json_schema(by_alias=True)
    schema["$schema"] = JSON_SCHEMA_URL
    return schema


def case_file_schema_text() -> str:
    """Returns the JSON Schema as pretty-printed JSON string."""
    return json.dumps(case_file_schema(), indent=2, ensure_ascii=True)
