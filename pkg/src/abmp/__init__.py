"""Asymmetric binary matrix partition: exact oracles, approximation
algorithms, and numeric checks of their guarantees."""

from abmp.core import (
    BundleClass,
    ColumnTaxonomy,
    Instance,
    PartitionScheme,
    classify_bundle,
    is_full_cover,
    partition_value,
    smooth,
    taxonomy,
)
from abmp.oracle import (
    OracleResult,
    allocation_to_scheme,
    brute_force_allocations,
    brute_force_schemes,
    welfare_of_allocation,
)
from abmp.uniform import ADVERSARIAL, FIRST_FIT, CoverPolicy, uniform_greedy
from abmp.welfare import continuous_greedy, lehmann_greedy

__all__ = [
    "ADVERSARIAL",
    "FIRST_FIT",
    "BundleClass",
    "ColumnTaxonomy",
    "CoverPolicy",
    "Instance",
    "OracleResult",
    "PartitionScheme",
    "allocation_to_scheme",
    "brute_force_allocations",
    "brute_force_schemes",
    "classify_bundle",
    "continuous_greedy",
    "is_full_cover",
    "lehmann_greedy",
    "partition_value",
    "smooth",
    "taxonomy",
    "uniform_greedy",
    "welfare_of_allocation",
]
