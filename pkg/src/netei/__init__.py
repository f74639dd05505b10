"""Extremal index of degree sequences sampled by random walks on graphs."""
from .estimators import (
    D2Check,
    EIEstimate,
    EmpiricalCopula,
    EstimatorError,
    ExceedanceStats,
    IntervalsSweep,
    cluster_size_distribution,
    d2_condition_check,
    ei_copula_estimator,
    empirical_copula,
    exceedance_stats,
    first_hitting_time,
    intervals_estimator,
    intervals_from_epochs,
    intervals_sweep,
)
from .generate import (
    configuration_model,
    generate_graph,
    metropolis_rewire,
    sample_degree_sequence,
    stage_seeds,
)
from .graph import EdgeListError, Graph, graph_stats, load_edge_list, write_edge_list
from .model import JointDegreeModel, mean_degree
from .samplers import (
    SampleTrace,
    SamplerConfig,
    kernel_histogram,
    pagerank_walk,
    random_walk,
    rwj_walk,
    stationary_distribution,
    walk,
)
from .theory import (
    EITheoryResult,
    ei_archimedean,
    ei_pr_lower_bound,
    ei_rw_pareto,
    ei_rwj_pareto,
    expected_hitting_fraction,
    iid_largest_degree,
    largest_degree_estimate,
    maxima_quantile,
    maxima_quantile_pareto,
    mean_cluster_size,
    theoretical_copula_diag,
)

__version__ = "0.1.0"
