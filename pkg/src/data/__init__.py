"""
Embedded catalog of example polytopes and Coxeter diagrams.
"""

from .catalog import (
    CATALOG,
    CatalogEntry,
    build,
    catalog_names,
    emit,
    from_document,
    get_entry,
    list_catalog,
    to_document,
)

__all__ = [
    "CATALOG",
    "CatalogEntry",
    "build",
    "catalog_names",
    "emit",
    "from_document",
    "get_entry",
    "list_catalog",
    "to_document",
]
