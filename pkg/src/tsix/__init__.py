"""Schema-consistent XML keyword search.

The engine removes spurious keyword-search results by comparing result
structures at the schema level (a keyword-augmented structural summary),
resolves missing answers through iterative ancestor generalization,
evaluates all generated twig queries simultaneously over an inverted
instance index, and supports a relevance-feedback loop for deliberately
broadening results.
"""

from .bundle import IndexBundle, build_bundle, bundle_from_xml, load_bundle, save_bundle
from .consistency import (
    QueryResultSet,
    ResultGroup,
    ResultStructure,
    apply_feedback,
    instance_slca_ids,
    resolve_naive,
    resolve_schema_level,
    start_search,
)
from .dataguide import DataGuidePlus, build_dataguide
from .output import ReturnStrategy, render
from .xmlstore import InstanceTree, ParseConfig, parse_document, parse_file

__version__ = "0.1.0"

__all__ = [
    "DataGuidePlus",
    "IndexBundle",
    "InstanceTree",
    "ParseConfig",
    "QueryResultSet",
    "ResultGroup",
    "ResultStructure",
    "ReturnStrategy",
    "apply_feedback",
    "build_bundle",
    "build_dataguide",
    "bundle_from_xml",
    "instance_slca_ids",
    "load_bundle",
    "parse_document",
    "parse_file",
    "render",
    "resolve_naive",
    "resolve_schema_level",
    "save_bundle",
    "start_search",
    "__version__",
]
