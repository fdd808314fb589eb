//! Constant-time decisions on hereditary classes.
//!
//! If every instance is `H`-free for a fixed `H` on `l` vertices, then any
//! instance with more than `2^(l^2)` vertices has `p > l` and is a
//! yes-instance through the subgraph disjunct. Only the finitely many
//! smaller instances need real work.

use super::{decide_cos, decide_cpos, solve_scos_with, CPoSInstance, CoSInstance, SCoSInstance};
use crate::circuit::DEFAULT_MATERIALIZATION_CAP;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::reconfig::ReconfigOptions;
use crate::subgraph::contains_induced;

#[derive(Debug, Clone, Copy)]
pub enum InstanceRef<'a> {
    Cos(&'a CoSInstance),
    Cpos(&'a CPoSInstance),
    /// The threshold is compared against `m`.
    Scos(&'a SCoSInstance),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    /// At or below the threshold; the full decision procedure ran.
    Delegated,
    /// Above the threshold; answered without looking at the graph.
    AboveThreshold,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FastDecision {
    pub answer: bool,
    pub route: Route,
}

#[derive(Debug, Clone)]
pub struct HereditaryOptions {
    /// Check the `H`-freeness promise above the threshold. Costs a subgraph
    /// search, so the answer is no longer constant-time.
    pub verify_promise: bool,
    pub reconfig: ReconfigOptions,
    pub materialization_cap: usize,
}

impl Default for HereditaryOptions {
    fn default() -> Self {
        HereditaryOptions {
            verify_promise: false,
            reconfig: ReconfigOptions::default(),
            materialization_cap: DEFAULT_MATERIALIZATION_CAP,
        }
    }
}

/// `2^(l^2)`, saturating.
pub fn threshold(l: usize) -> u128 {
    let e = l.saturating_mul(l);
    if e >= 128 {
        u128::MAX
    } else {
        1u128 << e
    }
}

pub fn hereditary_fast_decide(inst: InstanceRef<'_>, h: &Graph, opts: &HereditaryOptions) -> Result<FastDecision> {
    let l = h.vertex_count();
    if l == 0 {
        return Err(Error::Parameter("forbidden graph needs at least one vertex".into()));
    }
    let size = match inst {
        InstanceRef::Cos(i) => i.graph().vertex_count(),
        InstanceRef::Cpos(i) => i.graph().vertex_count(),
        InstanceRef::Scos(i) => i.m(),
    } as u128;
    if size <= threshold(l) {
        let answer = match inst {
            InstanceRef::Cos(i) => decide_cos(i)?,
            InstanceRef::Cpos(i) => decide_cpos(i, &opts.reconfig)?,
            InstanceRef::Scos(i) => solve_scos_with(i, opts.materialization_cap)?.is_some(),
        };
        return Ok(FastDecision {
            answer,
            route: Route::Delegated,
        });
    }
    // The argument needs p >= l; faithful instances get this from the
    // threshold, generalized ones must carry it.
    let p = match inst {
        InstanceRef::Cos(i) => i.p(),
        InstanceRef::Cpos(i) => i.p(),
        InstanceRef::Scos(i) => i.p()?,
    };
    if p < l {
        return Err(Error::Parameter(format!("instance p = {p} is below |V(H)| = {l}")));
    }
    if opts.verify_promise {
        let violated = match inst {
            InstanceRef::Cos(i) => contains_induced(i.graph(), h).is_some(),
            InstanceRef::Cpos(i) => contains_induced(i.graph(), h).is_some(),
            InstanceRef::Scos(i) if i.m() <= opts.materialization_cap => {
                let g = i
                    .circuit()
                    .materialize_with(opts.materialization_cap, opts.reconfig.exec)?;
                contains_induced(&g, h).is_some()
            }
            InstanceRef::Scos(_) => false,
        };
        if violated {
            return Err(Error::PromiseViolated);
        }
    }
    Ok(FastDecision {
        answer: true,
        route: Route::AboveThreshold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Circuit;

    #[test]
    fn edgeless_with_k2() {
        let k2 = Graph::complete(2);
        let opts = HereditaryOptions::default();
        let big = CoSInstance::faithful(Graph::empty(20)).unwrap();
        let d = hereditary_fast_decide(InstanceRef::Cos(&big), &k2, &opts).unwrap();
        assert_eq!(
            d,
            FastDecision {
                answer: true,
                route: Route::AboveThreshold
            }
        );
        let small = CoSInstance::faithful(Graph::empty(10)).unwrap();
        let d = hereditary_fast_decide(InstanceRef::Cos(&small), &k2, &opts).unwrap();
        assert_eq!(
            d,
            FastDecision {
                answer: true,
                route: Route::Delegated
            }
        );
    }

    #[test]
    fn complete_with_2k1() {
        let h = Graph::empty(2);
        let inst = CoSInstance::faithful(Graph::complete(20)).unwrap();
        let d = hereditary_fast_decide(InstanceRef::Cos(&inst), &h, &HereditaryOptions::default()).unwrap();
        assert!(d.answer);
        assert_eq!(d.answer, decide_cos(&inst).unwrap());
    }

    #[test]
    fn promise_check() {
        let opts = HereditaryOptions {
            verify_promise: true,
            ..HereditaryOptions::default()
        };
        let inst = CoSInstance::faithful(Graph::complete(20)).unwrap();
        let r = hereditary_fast_decide(InstanceRef::Cos(&inst), &Graph::complete(2), &opts);
        assert!(matches!(r, Err(Error::PromiseViolated)));
    }

    #[test]
    fn generalized_p_below_l() {
        let inst = CoSInstance::generalized(Graph::empty(20), 1).unwrap();
        let r = hereditary_fast_decide(
            InstanceRef::Cos(&inst),
            &Graph::complete(2),
            &HereditaryOptions::default(),
        );
        assert!(matches!(r, Err(Error::Parameter(_))));
    }

    #[test]
    fn succinct_compares_m() {
        let inst = SCoSInstance::new(Circuit::constant(17, false));
        let d = hereditary_fast_decide(
            InstanceRef::Scos(&inst),
            &Graph::complete(2),
            &HereditaryOptions::default(),
        )
        .unwrap();
        assert_eq!(d.route, Route::AboveThreshold);
        let inst = SCoSInstance::new(Circuit::constant(4, false));
        let d = hereditary_fast_decide(
            InstanceRef::Scos(&inst),
            &Graph::complete(2),
            &HereditaryOptions::default(),
        )
        .unwrap();
        assert_eq!(
            d,
            FastDecision {
                answer: true,
                route: Route::Delegated
            }
        );
    }
}
