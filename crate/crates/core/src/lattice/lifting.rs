use super::UnitValue;

/// Direction of a set lifting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LiftMode {
    Directed,
    Symmetric,
}

/// `sup_{u in us} inf_{v in vs} d(u, v)`: 0 when `us` is empty, 1 when only `vs` is.
pub fn directed_hausdorff<U, V, D>(us: &[U], vs: &[V], d: D) -> UnitValue
where
    D: Fn(&U, &V) -> UnitValue,
{
    UnitValue::sup(
        us.iter()
            .map(|u| UnitValue::inf(vs.iter().map(|v| d(u, v)))),
    )
}

/// Either the directed lifting or the max of both directions.
pub fn hausdorff<T, D>(us: &[T], vs: &[T], d: D, mode: LiftMode) -> UnitValue
where
    D: Fn(&T, &T) -> UnitValue,
{
    let forward = directed_hausdorff(us, vs, &d);
    match mode {
        LiftMode::Directed => forward,
        LiftMode::Symmetric => forward.join(directed_hausdorff(vs, us, |v, u| d(v, u))),
    }
}

/// Lifted relation test: every element of `xs1` is related to some element of `xs2`,
/// and in symmetric mode also every element of `xs2` to some element of `xs1`
/// (the converse of the directed lifting).
pub fn lift_related<T, R>(xs1: &[T], xs2: &[T], r: R, mode: LiftMode) -> bool
where
    R: Fn(&T, &T) -> bool,
{
    let forward = xs1.iter().all(|a| xs2.iter().any(|b| r(a, b)));
    match mode {
        LiftMode::Directed => forward,
        LiftMode::Symmetric => forward && xs2.iter().all(|b| xs1.iter().any(|a| r(b, a))),
    }
}

/// Lifts a relation on `0..n`, given as a predicate, to the relation on all subsets.
///
/// Subsets are encoded as bitmasks over `0..n`; the result is indexed `[mask1][mask2]`.
/// Intended for small carriers (`n <= 16`).
pub fn relation_lift<R>(n: usize, r: R, mode: LiftMode) -> Vec<Vec<bool>>
where
    R: Fn(usize, usize) -> bool,
{
    assert!(n <= 16, "relation_lift is exponential in the carrier size");
    let subsets = 1usize << n;
    let members = |mask: usize| (0..n).filter(|i| mask >> i & 1 == 1).collect::<Vec<_>>();
    let all: Vec<Vec<usize>> = (0..subsets).map(members).collect();
    (0..subsets)
        .map(|a| {
            (0..subsets)
                .map(|b| lift_related(&all[a], &all[b], |x, y| r(*x, *y), mode))
                .collect()
        })
        .collect()
}
