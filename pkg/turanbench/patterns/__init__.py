from turanbench.patterns.catalog import (
    CATALOG,
    CatalogEntry,
    catalog_get,
    list_catalog,
    parse_pattern_list,
    suspend,
)
from turanbench.patterns.detect import (
    Pattern,
    contains_subgraph,
    contains_suspension,
    find_embedding,
    find_free_violation,
    is_free,
)

__all__ = (
    "CATALOG",
    "CatalogEntry",
    "Pattern",
    "catalog_get",
    "contains_subgraph",
    "contains_suspension",
    "find_embedding",
    "find_free_violation",
    "is_free",
    "list_catalog",
    "parse_pattern_list",
    "suspend",
)
