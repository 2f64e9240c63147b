"""
Shared utilities: configuration, graph helpers, JSON conversion and errors.

``conversion_utils`` depends on the arithmetic package and is imported
from its module path.
"""

from .basic_utils import BasicUtils, DEFAULT_CONFIG, deep_update, get_project_root, load_config
from . import errors

__all__ = ["BasicUtils", "DEFAULT_CONFIG", "deep_update", "get_project_root", "load_config", "errors"]
