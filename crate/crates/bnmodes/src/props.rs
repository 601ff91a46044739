//! Built-in dynamical properties, checkable against any concrete model.
//!
//! Each check returns `Ok(())` or a counterexample description, so callers
//! can aggregate them over network sweeps. [`check_model`] bundles them into
//! the report printed by the `check` CLI subcommand; observation entries
//! report behaviour that is not asserted either way.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{AutomataSet, Config, ConfigSet};
use crate::interval::Interval;
use crate::memory::{Memory, MemoryDelays, MemoryVector};
use crate::mp::{hypercube_closure, MostPermissive};
use crate::network::BooleanNetwork;
use crate::schedule::Schedule;
use crate::set_update::{iterate_omega, Elementary, FullyAsync, SetUpdate};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Info,
}

#[derive(Debug, Clone)]
pub struct PropertyReport {
    pub name: String,
    pub verdict: Verdict,
    pub detail: String,
}

fn configs(n: usize) -> impl Iterator<Item = Config> {
    (0..1u64 << n).map(move |code| Config::new(n, code))
}

/// Reflexive-transitive closure of the elementary update from one
/// configuration.
fn elementary_closure(net: &BooleanNetwork, x: Config) -> ConfigSet {
    let e = Elementary::new(net);
    iterate_omega(|s| e.apply(s).union(s), &ConfigSet::singleton(x))
}

/// `apply` must equal the union of the member images, for every exposed
/// update.
pub fn check_decomposition(
    u: &(impl SetUpdate + ?Sized),
    samples: &[ConfigSet],
) -> Result<(), String> {
    for xs in samples {
        let mut union = ConfigSet::empty(u.dim());
        for x in xs.iter() {
            union.union_with(&u.successors(x));
        }
        if u.apply(xs) != union {
            return Err(format!("decomposition broken on {xs:?}"));
        }
    }
    Ok(())
}

pub fn check_fully_async_within_elementary(net: &BooleanNetwork) -> Result<(), String> {
    let fa = FullyAsync::new(net);
    let e = Elementary::new(net);
    for x in configs(net.dim()) {
        if !fa.successors(x).is_subset(&e.successors(x)) {
            return Err(format!("fully-async image at {x} leaves the elementary image"));
        }
    }
    Ok(())
}

pub fn check_parallel_within_elementary(net: &BooleanNetwork) -> Result<(), String> {
    let e = Elementary::new(net);
    for x in configs(net.dim()) {
        if !e.successors(x).contains(net.apply(x)) {
            return Err(format!("parallel successor of {x} is not elementary"));
        }
    }
    Ok(())
}

pub fn check_elementary_within_interval(net: &BooleanNetwork) -> Result<(), String> {
    let e = Elementary::new(net);
    let iv = Interval::new(net);
    for x in configs(net.dim()) {
        if !e.successors(x).is_subset(&iv.successors(x)) {
            return Err(format!("elementary image at {x} leaves the interval image"));
        }
    }
    Ok(())
}

pub fn check_elementary_within_mp(net: &BooleanNetwork) -> Result<(), String> {
    let e = Elementary::new(net);
    let mp = MostPermissive::with_cap(net, net.dim()).expect("cap is the dimension");
    for x in configs(net.dim()) {
        if !e.successors(x).is_subset(&mp.successors(x)) {
            return Err(format!(
                "elementary image at {x} leaves the most-permissive image"
            ));
        }
    }
    Ok(())
}

pub fn check_interval_fixed_points(net: &BooleanNetwork) -> Result<(), String> {
    let iv = Interval::new(net);
    for x in configs(net.dim()) {
        let fixed = net.apply(x) == x;
        let singleton = iv.successors(x) == ConfigSet::singleton(x);
        if fixed != singleton {
            return Err(format!(
                "interval fixed-point biconditional broken at {x} (fixed={fixed})"
            ));
        }
    }
    Ok(())
}

pub fn check_mp_fixed_points(net: &BooleanNetwork) -> Result<(), String> {
    let mp = MostPermissive::with_cap(net, net.dim()).expect("cap is the dimension");
    for x in configs(net.dim()) {
        let fixed = net.apply(x) == x;
        let singleton = mp.successors(x) == ConfigSet::singleton(x);
        if fixed != singleton {
            return Err(format!(
                "most-permissive fixed-point biconditional broken at {x} (fixed={fixed})"
            ));
        }
    }
    Ok(())
}

pub fn check_mp_idempotent(net: &BooleanNetwork) -> Result<(), String> {
    let mp = MostPermissive::with_cap(net, net.dim()).expect("cap is the dimension");
    for x in configs(net.dim()) {
        let once = mp.successors(x);
        if mp.apply(&once) != once {
            return Err(format!("most-permissive image at {x} is not idempotent"));
        }
    }
    Ok(())
}

/// Strict inclusion of the memory transitions in the elementary ones,
/// exactly as the selection formula generates them (self-loops included).
pub fn check_memory_within_elementary(
    net: &BooleanNetwork,
    selected: AutomataSet,
) -> Result<(), String> {
    memory_within_elementary(net, selected, true)
}

/// The same inclusion restricted to non-reflexive transitions.
pub fn check_memory_nonloops_within_elementary(
    net: &BooleanNetwork,
    selected: AutomataSet,
) -> Result<(), String> {
    memory_within_elementary(net, selected, false)
}

fn memory_within_elementary(
    net: &BooleanNetwork,
    selected: AutomataSet,
    include_loops: bool,
) -> Result<(), String> {
    let memory = Memory::new(net, selected);
    let e = Elementary::new(net);
    for x in configs(net.dim()) {
        let elementary = e.successors(x);
        for y in memory.successors(x).iter() {
            if !include_loops && y == x {
                continue;
            }
            if !elementary.contains(y) {
                return Err(format!(
                    "memory transition {x} -> {y} under {selected} is not elementary"
                ));
            }
        }
    }
    Ok(())
}

pub fn check_memory_fixed_points(
    net: &BooleanNetwork,
    selected: AutomataSet,
) -> Result<(), String> {
    let memory = Memory::new(net, selected);
    for x in configs(net.dim()) {
        if net.apply(x) == x && memory.successors(x) != ConfigSet::singleton(x) {
            return Err(format!("memory image moves the fixed point {x}"));
        }
    }
    Ok(())
}

/// The delay-projection route and the elementary-selection route must give
/// the same image on every singleton.
pub fn check_memory_equivalence(
    net: &BooleanNetwork,
    maxima: &MemoryVector,
) -> Result<(), String> {
    let delays = MemoryDelays::new(net, maxima.clone());
    let selection = Memory::new(net, maxima.selected());
    for x in configs(net.dim()) {
        let a = delays.successors(x);
        let b = selection.successors(x);
        if a != b {
            return Err(format!(
                "memory routes disagree at {x} with maxima {:?}: {a:?} vs {b:?}",
                maxima.entries()
            ));
        }
    }
    Ok(())
}

/// Every block-sequential target must be reachable through elementary
/// transitions.
pub fn check_schedule_paths(net: &BooleanNetwork, schedule: &Schedule) -> Result<(), String> {
    for x in configs(net.dim()) {
        let y = schedule.step(net, x);
        if !elementary_closure(net, x).contains(y) {
            return Err(format!("schedule target {x} -> {y} has no elementary path"));
        }
    }
    Ok(())
}

/// Extensivity, idempotence, monotonicity and mixing closure of the
/// hypercube closure on sampled sets.
pub fn check_hypercube_laws(n: usize, rng: &mut impl Rng, samples: usize) -> Result<(), String> {
    for _ in 0..samples {
        let xs = random_set(n, rng);
        let closed = hypercube_closure(&xs);
        if !xs.is_subset(&closed) {
            return Err(format!("closure not extensive on {xs:?}"));
        }
        if hypercube_closure(&closed) != closed {
            return Err(format!("closure not idempotent on {xs:?}"));
        }
        let mut larger = xs.clone();
        larger.union_with(&random_set(n, rng));
        if !closed.is_subset(&hypercube_closure(&larger)) {
            return Err(format!("closure not monotone on {xs:?}"));
        }
        for u in closed.iter() {
            for i in 1..=n {
                for v in closed.iter() {
                    if !closed.contains(v.with(i, u.get(i))) {
                        return Err(format!("closure of {xs:?} not mixing-closed"));
                    }
                }
            }
        }
    }
    Ok(())
}

fn random_set(n: usize, rng: &mut impl Rng) -> ConfigSet {
    loop {
        let mut xs = ConfigSet::empty(n);
        for code in 0..1u64 << n {
            if rng.random::<bool>() {
                xs.insert_code(code);
            }
        }
        if !xs.is_empty() {
            return xs;
        }
    }
}

/// Random partition of `1..=n` for schedule sampling.
pub fn random_partition(n: usize, rng: &mut impl Rng) -> Vec<AutomataSet> {
    let mut order: Vec<usize> = (1..=n).collect();
    for i in (1..n).rev() {
        order.swap(i, rng.random_range(0..=i));
    }
    let mut blocks = Vec::new();
    let mut current = AutomataSet::empty();
    for (k, i) in order.into_iter().enumerate() {
        current.insert(i);
        if k + 1 == n || rng.random::<bool>() {
            blocks.push(current);
            current = AutomataSet::empty();
        }
    }
    blocks
}

/// Is the interval image contained in the most-permissive image? Not a
/// stated property; reported as an observation.
pub fn observe_interval_within_mp(net: &BooleanNetwork) -> Result<(), String> {
    let iv = Interval::new(net);
    let mp = MostPermissive::with_cap(net, net.dim()).expect("cap is the dimension");
    for x in configs(net.dim()) {
        if !iv.successors(x).is_subset(&mp.successors(x)) {
            return Err(format!("interval image at {x} leaves the most-permissive image"));
        }
    }
    Ok(())
}

/// Is one interval application idempotent? Not a stated property; reported
/// as an observation.
pub fn observe_interval_idempotence(net: &BooleanNetwork) -> Result<(), String> {
    let iv = Interval::new(net);
    for x in configs(net.dim()) {
        let once = iv.successors(x);
        if iv.apply(&once) != once {
            return Err(format!("one interval application is not idempotent at {x}"));
        }
    }
    Ok(())
}

/// Does widening/narrowing applied to whole sets match the per-singleton
/// union? Divergences are reported, not judged.
pub fn observe_mp_direct_image(
    net: &BooleanNetwork,
    rng: &mut impl Rng,
    samples: usize,
) -> Result<(), String> {
    let mp = MostPermissive::with_cap(net, net.dim()).expect("cap is the dimension");
    for _ in 0..samples {
        let xs = random_set(net.dim(), rng);
        let direct = mp.direct_image(&xs);
        let split = mp.apply(&xs);
        if direct != split {
            return Err(format!(
                "direct image on {xs:?} gives {direct:?}, per-singleton union gives {split:?}"
            ));
        }
    }
    Ok(())
}

fn report(out: &mut Vec<PropertyReport>, name: &str, result: Result<(), String>) {
    out.push(match result {
        Ok(()) => PropertyReport {
            name: name.to_string(),
            verdict: Verdict::Pass,
            detail: String::new(),
        },
        Err(detail) => PropertyReport {
            name: name.to_string(),
            verdict: Verdict::Fail,
            detail,
        },
    });
}

fn observe(out: &mut Vec<PropertyReport>, name: &str, result: Result<(), String>) {
    let detail = match result {
        Ok(()) => "holds on this model (not asserted in general)".to_string(),
        Err(detail) => format!("does not hold here: {detail}"),
    };
    out.push(PropertyReport {
        name: name.to_string(),
        verdict: Verdict::Info,
        detail,
    });
}

fn skip(out: &mut Vec<PropertyReport>, name: &str, why: &str) {
    out.push(PropertyReport {
        name: name.to_string(),
        verdict: Verdict::Info,
        detail: format!("skipped: {why}"),
    });
}

/// Runs the built-in property suite against one model. Exhaustive over the
/// configuration space; parameter sets and memory vectors are sampled with
/// the given seed.
pub fn check_model(net: &BooleanNetwork, seed: u64) -> Vec<PropertyReport> {
    let n = net.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();

    if n > 8 {
        skip(
            &mut out,
            "property suite",
            &format!("dimension {n} is above the exhaustive sweep limit of 8"),
        );
        return out;
    }
    net.compile_tables();

    let sample_sets: Vec<ConfigSet> = (0..8).map(|_| random_set(n, &mut rng)).collect();
    let sampled_params: Vec<AutomataSet> = if n <= 4 {
        AutomataSet::full(n).subsets().collect()
    } else {
        (0..8)
            .map(|_| (1..=n).filter(|_| rng.random::<bool>()).collect())
            .collect()
    };

    report(
        &mut out,
        "singleton decomposition (async)",
        check_decomposition(&Elementary::new(net), &sample_sets),
    );
    report(
        &mut out,
        "singleton decomposition (fully-async)",
        check_decomposition(&FullyAsync::new(net), &sample_sets),
    );
    report(
        &mut out,
        "singleton decomposition (interval)",
        check_decomposition(&Interval::new(net), &sample_sets),
    );
    report(
        &mut out,
        "parallel successors are elementary",
        check_parallel_within_elementary(net),
    );
    report(
        &mut out,
        "fully-async transitions within async",
        check_fully_async_within_elementary(net),
    );
    report(
        &mut out,
        "elementary images within interval",
        check_elementary_within_interval(net),
    );
    report(
        &mut out,
        "interval preserves exactly the fixed points",
        check_interval_fixed_points(net),
    );

    let mut strict = Ok(());
    let mut nonloop = Ok(());
    let mut memory_fixed = Ok(());
    for &selected in &sampled_params {
        strict = strict.and(check_memory_within_elementary(net, selected));
        nonloop = nonloop.and(check_memory_nonloops_within_elementary(net, selected));
        memory_fixed = memory_fixed.and(check_memory_fixed_points(net, selected));
    }
    report(&mut out, "memory transitions within async (strict)", strict);
    report(
        &mut out,
        "memory transitions within async (ignoring self-loops)",
        nonloop,
    );
    report(&mut out, "memory preserves fixed points", memory_fixed);

    let mut equivalence = Ok(());
    for _ in 0..50 {
        let maxima =
            MemoryVector::new((0..n).map(|_| rng.random_range(1..=3)).collect());
        equivalence = equivalence.and(check_memory_equivalence(net, &maxima));
    }
    report(
        &mut out,
        "memory delay route equals selection route",
        equivalence,
    );

    let mut paths = check_schedule_paths(net, &Schedule::parallel(n));
    for _ in 0..6 {
        let schedule = Schedule::block_sequential(random_partition(n, &mut rng), n)
            .expect("random partitions are valid");
        paths = paths.and(check_schedule_paths(net, &schedule));
    }
    report(
        &mut out,
        "block-sequential targets have elementary paths",
        paths,
    );

    report(
        &mut out,
        "hypercube closure laws",
        check_hypercube_laws(n, &mut rng, 16),
    );

    if n <= 6 {
        report(
            &mut out,
            "elementary transitions within most-permissive",
            check_elementary_within_mp(net),
        );
        report(
            &mut out,
            "most-permissive preserves exactly the fixed points",
            check_mp_fixed_points(net),
        );
        report(
            &mut out,
            "singleton decomposition (most-permissive)",
            check_decomposition(
                &MostPermissive::with_cap(net, n).expect("cap is the dimension"),
                &sample_sets,
            ),
        );
        if n <= 4 {
            report(
                &mut out,
                "most-permissive image is idempotent",
                check_mp_idempotent(net),
            );
        }
        observe(
            &mut out,
            "observation: interval within most-permissive",
            observe_interval_within_mp(net),
        );
        observe(
            &mut out,
            "observation: one interval application is idempotent",
            observe_interval_idempotence(net),
        );
        observe(
            &mut out,
            "observation: most-permissive direct image equals per-singleton union",
            observe_mp_direct_image(net, &mut rng, 16),
        );
    } else {
        skip(
            &mut out,
            "most-permissive properties",
            &format!("dimension {n} is above the most-permissive sweep limit of 6"),
        );
    }

    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_model_fails_only_the_strict_memory_inclusion() {
        let net = BooleanNetwork::parse("x1: !x3\nx2: !x1 & x3\nx3: !x1").unwrap();
        let reports = check_model(&net, 7);
        let failures: Vec<&PropertyReport> = reports
            .iter()
            .filter(|r| r.verdict == Verdict::Fail)
            .collect();
        // The strict inclusion is genuinely false: with every automaton
        // selected, 111 keeps a decaying self-loop that is not elementary.
        assert_eq!(failures.len(), 1, "{failures:?}");
        assert_eq!(failures[0].name, "memory transitions within async (strict)");
        assert!(failures[0].detail.contains("111 -> 111"));
        assert!(reports.len() > 12);
    }

    #[test]
    fn strict_memory_inclusion_fails_where_every_automaton_decays() {
        // With all automata selected and a configuration whose local
        // functions all read 0 while every state is 1, the selection formula
        // admits the empty update block, producing a self-loop that is not
        // an elementary transition.
        let net = BooleanNetwork::parse("a: 0\nb: 0").unwrap();
        let all = AutomataSet::full(2);
        assert!(check_memory_within_elementary(&net, all).is_err());
        assert!(check_memory_nonloops_within_elementary(&net, all).is_ok());
        // The delay route produces the same loop, so the two memory routes
        // still agree.
        assert!(check_memory_equivalence(&net, &MemoryVector::new(vec![2, 2])).is_ok());
    }

    #[test]
    fn random_partitions_are_partitions() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..=6 {
            for _ in 0..30 {
                let blocks = random_partition(n, &mut rng);
                assert!(Schedule::block_sequential(blocks, n).is_ok());
            }
        }
    }
}
