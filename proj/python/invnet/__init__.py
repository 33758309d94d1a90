"""Investor-category trading networks.

Thin Python wrapper over the ``_invnet`` extension: categorization of
transactions into the 99 investor categories, Gaussian mutual information,
C3NET/MST network inference, and statistically validated ensemble
aggregation.
"""

try:
    # installed layout: the extension lives inside the package
    from ._invnet import (
        aggregate,
        age_group,
        assign_category,
        binomial_tail,
        c3net,
        category_universe,
        centrality,
        compare,
        mi_from_rho,
        mst,
        multilayer_aggregate,
        occurrence_threshold,
        pearson,
    )
except ImportError:
    # build-tree layout: the extension sits on PYTHONPATH
    from _invnet import (
        aggregate,
        age_group,
        assign_category,
        binomial_tail,
        c3net,
        category_universe,
        centrality,
        compare,
        mi_from_rho,
        mst,
        multilayer_aggregate,
        occurrence_threshold,
        pearson,
    )

__all__ = [
    "aggregate",
    "age_group",
    "assign_category",
    "binomial_tail",
    "c3net",
    "category_universe",
    "centrality",
    "compare",
    "mi_from_rho",
    "mst",
    "multilayer_aggregate",
    "occurrence_threshold",
    "pearson",
]
