//! Workloads shared by the benchmarks.

use spwave_core::graphs::enumerate_graphs;
use spwave_core::tensors::build_invariant;
use spwave_core::SparseTensor;

/// Every graph tensor of degree `m` over `C_n`, in word order.
pub fn graph_tensors(m: usize, n: usize) -> Vec<SparseTensor> {
    enumerate_graphs(m, n)
        .iter()
        .map(|g| build_invariant(g, n).expect("enumerated graphs are valid"))
        .collect()
}
