//! The most permissive updating mode.
//!
//! For each subset `W` of automata, the image of a configuration is computed
//! by widening — adding the single-automaton updates of `W` and closing into
//! the smallest enclosing hypercube, iterated to a fixed point — followed by
//! narrowing, which keeps only configurations whose `W`-components are
//! producible by the local functions from the widened set. The mode is the
//! union over all `2^n` subsets, evaluated per singleton.

use thiserror::Error;

use crate::config::{AutomataSet, Config, ConfigSet};
use crate::network::BooleanNetwork;
use crate::set_update::{iterate_omega, SetUpdate};

/// Default dimension cap: each singleton image enumerates `2^n` subsets.
pub const DEFAULT_MP_CAP: usize = 12;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("most-permissive analysis needs dimension at most {cap}, got {dim}")]
pub struct MpCapExceeded {
    pub dim: usize,
    pub cap: usize,
}

/// Vertices of the smallest hypercube containing `xs`: every automaton seen
/// with both states becomes free, the others stay fixed. The result is
/// closed under componentwise mixing. Panics on an empty set.
pub fn hypercube_closure(xs: &ConfigSet) -> ConfigSet {
    assert!(!xs.is_empty(), "hypercube closure of an empty set");
    let mut all_and = u64::MAX;
    let mut all_or = 0u64;
    for code in xs.codes() {
        all_and &= code;
        all_or |= code;
    }
    let free = all_and ^ all_or;
    let mut out = ConfigSet::empty(xs.dim());
    let mut sub = 0u64;
    loop {
        out.insert_code(all_and | sub);
        if sub == free {
            return out;
        }
        sub = sub.wrapping_sub(free) & free;
    }
}

/// One widening pass: add the single-automaton updates of `W` and take the
/// hypercube closure. Inflationary on non-empty sets.
pub fn widen(net: &BooleanNetwork, targets: AutomataSet, xs: &ConfigSet) -> ConfigSet {
    assert!(targets.within(net.dim()), "widening set out of range");
    let mut grown = xs.clone();
    for x in xs.iter() {
        for i in targets.iter() {
            grown.insert(x.with(i, net.local(i, x)));
        }
    }
    hypercube_closure(&grown)
}

/// Keeps the configurations whose `W`-components can each be produced by
/// the corresponding local function from somewhere in `xs`.
pub fn narrow(net: &BooleanNetwork, targets: AutomataSet, xs: &ConfigSet) -> ConfigSet {
    assert!(targets.within(net.dim()), "narrowing set out of range");
    // Producible values per target automaton.
    let mut can_zero = AutomataSet::empty();
    let mut can_one = AutomataSet::empty();
    for i in targets.iter() {
        for y in xs.iter() {
            if net.local(i, y) {
                can_one.insert(i);
            } else {
                can_zero.insert(i);
            }
        }
    }
    let mut out = ConfigSet::empty(xs.dim());
    'members: for x in xs.iter() {
        for i in targets.iter() {
            let ok = if x.get(i) {
                can_one.contains(i)
            } else {
                can_zero.contains(i)
            };
            if !ok {
                continue 'members;
            }
        }
        out.insert(x);
    }
    out
}

/// The most permissive set update.
#[derive(Debug)]
pub struct MostPermissive<'a> {
    net: &'a BooleanNetwork,
}

impl<'a> MostPermissive<'a> {
    pub fn new(net: &'a BooleanNetwork) -> Result<Self, MpCapExceeded> {
        Self::with_cap(net, DEFAULT_MP_CAP)
    }

    pub fn with_cap(net: &'a BooleanNetwork, cap: usize) -> Result<Self, MpCapExceeded> {
        if net.dim() > cap {
            return Err(MpCapExceeded {
                dim: net.dim(),
                cap,
            });
        }
        Ok(MostPermissive { net })
    }

    /// Widen-then-narrow applied to a whole set at once instead of per
    /// singleton. Not used for the mode itself — the hypercube closure of a
    /// multi-element set can exceed the union of the per-singleton results —
    /// but exposed so diagnostics can report where the two disagree.
    pub fn direct_image(&self, xs: &ConfigSet) -> ConfigSet {
        assert!(!xs.is_empty(), "image of an empty set");
        let n = self.net.dim();
        let mut out = ConfigSet::empty(n);
        for w in AutomataSet::full(n).subsets() {
            let widened = iterate_omega(|s| widen(self.net, w, s), xs);
            out.union_with(&narrow(self.net, w, &widened));
        }
        out
    }
}

impl SetUpdate for MostPermissive<'_> {
    fn dim(&self) -> usize {
        self.net.dim()
    }

    fn successors(&self, x: Config) -> ConfigSet {
        self.direct_image(&ConfigSet::singleton(x))
    }
}
