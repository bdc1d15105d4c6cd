//! Constructions of guidance systems.

mod completion;
mod cut;
mod hitting;
mod interval;
mod rounding;
mod tree_model;

pub use completion::{complete_to_guidance, power_lift, power_lift_bound, PowerLift};
pub use cut::{
    compose_hierarchy, cut_compose, equivalence_classes, CutComposition, CutPartition, HierarchyNode,
    PartitionHierarchy,
};
pub use hitting::{hitting_set, vc_round, HittingStrategy, FEAS_TOL};
pub use interval::{interval_graph, interval_guidance, Interval};
pub use rounding::{p_random_neighbor, round_budget, round_fractional, Rounding};
pub use tree_model::{
    graph_from_tree_model, outdegree_bound as tree_model_bound, tree_model_guidance, TreeModel,
    TreeModelGuidance, DEFAULT_TYPE_BUDGET,
};
