use std::path::Path;

use mts_spectrum::game::{game_distance, solve_game, DeltaSpace};
use mts_spectrum::lattice::{directed_hausdorff, hausdorff, FixpointStats, LiftMode};
use mts_spectrum::logic::{
    eval, hm_cross_check, metric_denominator, parse_formula, shift_grid, Denotation, Fragment,
    SaturateOptions,
};
use mts_spectrum::lts::{parse_mts, to_text};
use mts_spectrum::oracle::{omega_oracle, trace_hausdorff_oracle, MAX_LEN, MAX_STATES};
use mts_spectrum::qualitative::{
    decorated_base, decorated_trace_related, state_relation, DecoratedKind, Semantics,
};
use mts_spectrum::quantitative::{
    bisim_metric, decorated_d0, decorated_distance, dir_sim_metric, dir_trace_metric,
    eps_characterization, DeltaStrategy, MetricDecoration, SolveOptions, TraceSolution,
};
use mts_spectrum::{Mts, StateId, StateSet, UnitValue};
use sha2::{Digest, Sha256};

use crate::args::{
    value_name, Cli, Command, DistArgs, DistSemantics, EquivArgs, EquivSemantics, EvalArgs, Suite,
    VerifyArgs,
};
use crate::error::CliError;
use crate::report::{braced, Check, Iterations, PairEntry, Payload, Report, StateValue};
use crate::sets::{names, parse_pairs, parse_set};

struct Context {
    model: Mts,
    path: String,
    digest: String,
    options: SolveOptions,
    max_iter: Option<usize>,
    shift_grid: Option<i64>,
}

impl Context {
    fn load(cli: &Cli, path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let model = parse_mts(&text).map_err(|source| CliError::Model {
            path: path.to_path_buf(),
            source,
        })?;
        let digest = hex::encode(Sha256::digest(to_text(&model).as_bytes()));
        let strategy = if cli.brute_delta {
            DeltaStrategy::Brute
        } else {
            DeltaStrategy::Threshold
        };
        Ok(Context {
            model,
            path: path.display().to_string(),
            digest,
            options: SolveOptions {
                max_iter: cli.max_iter,
                strategy,
            },
            max_iter: cli.max_iter,
            shift_grid: cli.shift_grid,
        })
    }

    fn report(&self, command: &[String], semantics: String, result: Payload) -> Report {
        Report {
            command: command.to_vec(),
            model: self.path.clone(),
            digest: self.digest.clone(),
            semantics,
            iterations: None,
            result,
            checks: Vec::new(),
        }
    }

    fn name(&self, x: StateId) -> String {
        self.model.state_name(x).to_string()
    }

    fn singleton_pairs(&self) -> Vec<(StateSet, StateSet)> {
        let m = &self.model;
        m.states()
            .flat_map(|x| m.states().map(move |y| (m.singleton(x), m.singleton(y))))
            .collect()
    }

    fn argument_pairs(
        &self,
        from: &Option<String>,
        to: &Option<String>,
    ) -> Result<Vec<(StateSet, StateSet)>, CliError> {
        match (from, to) {
            (Some(a), Some(b)) => Ok(vec![(
                parse_set(&self.model, a)?,
                parse_set(&self.model, b)?,
            )]),
            _ => Ok(self.singleton_pairs()),
        }
    }

    fn pair_name(&self, x1: &StateSet, x2: &StateSet) -> String {
        format!(
            "{} {}",
            braced(&names(&self.model, x1)),
            braced(&names(&self.model, x2))
        )
    }
}

/// Fails with a budget error unless the iteration stabilized.
fn require_stable(stats: FixpointStats, what: &str) -> Result<Iterations, CliError> {
    if !stats.stabilized {
        return Err(CliError::Budget(format!(
            "{what} did not stabilize within {} iterations",
            stats.iterations
        )));
    }
    Ok(Iterations {
        count: stats.iterations,
        bound: stats.bound,
    })
}

pub fn run(cli: &Cli, command: &[String]) -> Result<Report, CliError> {
    match &cli.command {
        Command::Equiv(a) => equiv(&Context::load(cli, &a.file)?, command, a),
        Command::Dist(a) => dist(&Context::load(cli, &a.file)?, command, a),
        Command::Verify(a) => verify(&Context::load(cli, &a.file)?, command, a),
        Command::Eval(a) => eval_formula(&Context::load(cli, &a.file)?, command, a),
    }
}

fn semantics_of(s: EquivSemantics) -> Semantics {
    match s {
        EquivSemantics::Bisim => Semantics::Bisim,
        EquivSemantics::Sim => Semantics::Sim,
        EquivSemantics::Trace => Semantics::Trace,
        EquivSemantics::Completed => Semantics::Decorated(DecoratedKind::Completed),
        EquivSemantics::Failure => Semantics::Decorated(DecoratedKind::Failure),
        EquivSemantics::Ready => Semantics::Decorated(DecoratedKind::Ready),
        EquivSemantics::PossibleFutures => Semantics::Decorated(DecoratedKind::PossibleFutures),
    }
}

fn equiv(ctx: &Context, command: &[String], a: &EquivArgs) -> Result<Report, CliError> {
    let m = &ctx.model;
    let rel = state_relation(m, semantics_of(a.semantics), ctx.max_iter);
    let iterations = require_stable(rel.stats, "relation")?;
    let entry = |x: StateId, y: StateId| PairEntry {
        left: ctx.name(x),
        right: ctx.name(y),
        related: rel.value.related(x, y),
    };
    let pairs = match &a.pairs {
        Some(text) => parse_pairs(m, text)?
            .into_iter()
            .map(|(x, y)| entry(x, y))
            .collect(),
        None => m
            .states()
            .flat_map(|x| m.states().map(move |y| (x, y)))
            .filter(|&(x, y)| rel.value.related(x, y))
            .map(|(x, y)| entry(x, y))
            .collect(),
    };
    let mut report = ctx.report(
        command,
        value_name(&a.semantics),
        Payload::Relation { pairs },
    );
    report.iterations = Some(iterations);
    Ok(report)
}

fn decoration_of(s: DistSemantics) -> Option<MetricDecoration> {
    use DistSemantics::*;
    Some(match s {
        CompletedM => MetricDecoration::Completed,
        FailureDisc => MetricDecoration::FailureDiscrete,
        FailureHaus => MetricDecoration::FailureHausdorff,
        FailurePseudo => MetricDecoration::FailurePseudoHausdorff,
        ReadyDisc => MetricDecoration::ReadyDiscrete,
        ReadyHaus => MetricDecoration::ReadyHausdorff,
        PossibleFuturesM => MetricDecoration::PossibleFutures,
        BisimM | SimM | TraceM => return None,
    })
}

/// The distance of `semantics`; branching distances on sets are Hausdorff-lifted.
fn distance(
    ctx: &Context,
    semantics: DistSemantics,
    x1: &StateSet,
    x2: &StateSet,
) -> Result<(UnitValue, FixpointStats), CliError> {
    let m = &ctx.model;
    let solved = |s: TraceSolution| (s.distance, s.stats);
    Ok(match semantics {
        DistSemantics::BisimM | DistSemantics::SimM => {
            let table = if semantics == DistSemantics::BisimM {
                bisim_metric(m, ctx.max_iter)
            } else {
                dir_sim_metric(m, ctx.max_iter)
            };
            let (u, v): (Vec<StateId>, Vec<StateId>) = (x1.iter().collect(), x2.iter().collect());
            let d = |p: &StateId, q: &StateId| table.value.get(*p, *q);
            let value = if semantics == DistSemantics::BisimM {
                hausdorff(&u, &v, d, LiftMode::Symmetric)
            } else {
                directed_hausdorff(&u, &v, d)
            };
            (value, table.stats)
        }
        DistSemantics::TraceM => solved(dir_trace_metric(m, x1, x2, ctx.options)?),
        other => {
            let kind = decoration_of(other).expect("decorated semantics");
            solved(decorated_distance(m, x1, x2, kind, ctx.options)?)
        }
    })
}

fn dist(ctx: &Context, command: &[String], a: &DistArgs) -> Result<Report, CliError> {
    let m = &ctx.model;
    let (x1, x2) = (parse_set(m, &a.from)?, parse_set(m, &a.to)?);
    let (value, stats) = distance(ctx, a.semantics, &x1, &x2)?;
    let iterations = require_stable(stats, "distance")?;
    let payload = Payload::Distance {
        from: names(m, &x1),
        to: names(m, &x2),
        value: value.to_string(),
    };
    let mut report = ctx.report(command, value_name(&a.semantics), payload);
    report.iterations = Some(iterations);
    Ok(report)
}

fn eval_formula(ctx: &Context, command: &[String], a: &EvalArgs) -> Result<Report, CliError> {
    let m = &ctx.model;
    let f = parse_formula(m, &a.formula, a.fragment)?;
    let values = match eval(m, &f, a.fragment)? {
        Denotation::Set(s) => m
            .states()
            .map(|x| StateValue {
                state: ctx.name(x),
                value: s.contains(x).to_string(),
            })
            .collect(),
        Denotation::Fun(f) => m
            .states()
            .map(|x| StateValue {
                state: ctx.name(x),
                value: f[x.0].to_string(),
            })
            .collect(),
    };
    Ok(ctx.report(
        command,
        a.fragment.to_string(),
        Payload::Denotation { values },
    ))
}

fn verify(ctx: &Context, command: &[String], a: &VerifyArgs) -> Result<Report, CliError> {
    let checks = match a.suite {
        Suite::Oracle => verify_oracle(ctx, a)?,
        Suite::Hm => verify_hm(ctx, a)?,
        Suite::Game => verify_game(ctx, a)?,
        Suite::Hierarchy => verify_hierarchy(ctx)?,
    };
    let failed = checks.iter().filter(|c| !c.passed).count();
    let payload = Payload::Verification {
        passed: checks.len() - failed,
        failed,
    };
    let mut report = ctx.report(command, value_name(&a.suite), payload);
    report.checks = checks;
    Ok(report)
}

fn check(name: String, passed: bool, detail: String) -> Check {
    Check {
        name,
        passed,
        detail,
    }
}

/// Trace distances, decorated relations and decorated distances against the
/// path-enumeration oracles. Truncated oracle answers only bound the result.
fn verify_oracle(ctx: &Context, a: &VerifyArgs) -> Result<Vec<Check>, CliError> {
    let m = &ctx.model;
    if m.num_states() > MAX_STATES {
        return Err(CliError::Budget(format!(
            "{} states exceeds the oracle limit of {MAX_STATES}",
            m.num_states()
        )));
    }
    let max_len = m.longest_path().map_or(MAX_LEN, |h| h.min(MAX_LEN));
    let bases = DecoratedKind::ALL
        .into_iter()
        .map(|k| {
            let r = decorated_base(m, k, ctx.max_iter);
            require_stable(r.stats, "decoration base").map(|_| (k, r.value))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let d0s = MetricDecoration::ALL
        .into_iter()
        .map(|k| {
            let d = decorated_d0(m, k, ctx.options)?;
            require_stable(d.stats, "decoration base").map(|_| (k, d.value))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let mut out = Vec::new();
    for (x1, x2) in ctx.argument_pairs(&a.from, &a.to)? {
        let pair = ctx.pair_name(&x1, &x2);
        let d = dir_trace_metric(m, &x1, &x2, ctx.options)?;
        require_stable(d.stats, "trace distance")?;
        let o = trace_hausdorff_oracle(m, &x1, &x2, max_len, LiftMode::Directed)?;
        let (ok, how) = if o.exact {
            (o.value == d.distance, "exact")
        } else {
            (o.value <= d.distance, "lower bound")
        };
        out.push(check(
            format!("trace-m {pair}"),
            ok,
            format!("fixpoint {} oracle {} ({how})", d.distance, o.value),
        ));
        for (kind, r0) in &bases {
            let rel = decorated_trace_related(m, &x1, &x2, r0, ctx.max_iter);
            require_stable(rel.stats, "decorated relation")?;
            let o = omega_oracle(m, &x1, &x2, r0, max_len)?;
            let ok = if o.exact {
                rel.value == o.value
            } else {
                !rel.value || o.value
            };
            out.push(check(
                format!("{kind} {pair}"),
                ok,
                format!(
                    "fixpoint {} oracle {}{}",
                    rel.value,
                    o.value,
                    if o.exact { "" } else { " (bounded)" }
                ),
            ));
        }
        if o.exact {
            for (kind, d0) in &d0s {
                let d = decorated_distance(m, &x1, &x2, *kind, ctx.options)?;
                require_stable(d.stats, "decorated distance")?;
                let e = eps_characterization(m, &x1, &x2, Some(d0), max_len);
                out.push(check(
                    format!("{kind}-m {pair}"),
                    d.distance == e,
                    format!("fixpoint {} characterization {e}", d.distance),
                ));
            }
        }
    }
    Ok(out)
}

fn saturate_options(ctx: &Context) -> SaturateOptions {
    match ctx.shift_grid {
        Some(0) => SaturateOptions::shift_free(),
        Some(q) => SaturateOptions::with_grid(shift_grid(q)),
        None => SaturateOptions::with_grid(shift_grid(metric_denominator(&ctx.model))),
    }
}

fn verify_hm(ctx: &Context, a: &VerifyArgs) -> Result<Vec<Check>, CliError> {
    let fragments: Vec<Fragment> = match a.fragment {
        Some(f) => vec![f],
        None => Fragment::ALL.to_vec(),
    };
    let options = saturate_options(ctx);
    let mut out = Vec::new();
    for fragment in fragments {
        let report = hm_cross_check(&ctx.model, fragment, a.depth, &options)?;
        for row in &report.rows {
            let passed = if fragment.is_metric() {
                row.sound
            } else {
                row.equal
            };
            out.push(check(
                format!("hm {fragment} k={}", row.k),
                passed,
                format!(
                    "formulas {} equal {} sound {} gap {}",
                    row.logic_size, row.equal, row.sound, row.gap
                ),
            ));
        }
        out.push(check(
            format!("hm {fragment}"),
            report.passed,
            format!(
                "logic stabilized {} equality required {}",
                report.logic_stabilized, report.equality_required
            ),
        ));
    }
    Ok(out)
}

fn verify_game(ctx: &Context, a: &VerifyArgs) -> Result<Vec<Check>, CliError> {
    let m = &ctx.model;
    let space = if ctx.options.strategy == DeltaStrategy::Brute {
        DeltaSpace::Full
    } else {
        DeltaSpace::Threshold
    };
    let mut out = Vec::new();
    for (x1, x2) in ctx.argument_pairs(&a.from, &a.to)? {
        let pair = ctx.pair_name(&x1, &x2);
        let d = dir_trace_metric(m, &x1, &x2, ctx.options)?;
        require_stable(d.stats, "trace distance")?;
        match a.epsilon {
            Some(eps) => {
                let sol = solve_game(m, &x1, &x2, eps, space);
                let certificate = sol.check(m);
                let consistent = sol.maiden_wins() == (d.distance <= eps);
                let winner = if sol.maiden_wins() {
                    "maiden_wins"
                } else {
                    "death_wins"
                };
                let detail = match &certificate {
                    Ok(()) if consistent => format!("{winner}, consistent (d_T = {})", d.distance),
                    Ok(()) => format!("{winner}, inconsistent with d_T = {}", d.distance),
                    Err(e) => format!("{winner}, certificate rejected: {e}"),
                };
                out.push(check(
                    format!("game {pair} eps={eps}"),
                    certificate.is_ok() && consistent,
                    detail,
                ));
            }
            None => {
                let g = game_distance(m, &x1, &x2, space);
                out.push(check(
                    format!("game {pair}"),
                    g == d.distance,
                    format!("bisection {g} d_T {}", d.distance),
                ));
            }
        }
    }
    Ok(out)
}

fn verify_hierarchy(ctx: &Context) -> Result<Vec<Check>, CliError> {
    let m = &ctx.model;
    let chain = [
        EquivSemantics::Bisim,
        EquivSemantics::PossibleFutures,
        EquivSemantics::Ready,
        EquivSemantics::Failure,
        EquivSemantics::Completed,
        EquivSemantics::Trace,
    ];
    let rels = chain
        .iter()
        .map(|&s| {
            let r = state_relation(m, semantics_of(s), ctx.max_iter);
            require_stable(r.stats, "relation").map(|_| r.value)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut out = Vec::new();
    for (i, w) in rels.windows(2).enumerate() {
        let witness = w[0].pairs().find(|&(p, q)| !w[1].get(p, q));
        out.push(check(
            format!("{} => {}", value_name(&chain[i]), value_name(&chain[i + 1])),
            witness.is_none(),
            match witness {
                None => "implication holds".into(),
                Some((p, q)) => format!(
                    "counterexample {} {}",
                    ctx.name(StateId(p)),
                    ctx.name(StateId(q))
                ),
            },
        ));
    }
    use DistSemantics::*;
    let order = [
        (TraceM, CompletedM),
        (CompletedM, FailureHaus),
        (FailureHaus, ReadyHaus),
        (ReadyHaus, PossibleFuturesM),
        (FailureHaus, FailureDisc),
        (FailureDisc, ReadyDisc),
    ];
    let bisim = bisim_metric(m, ctx.max_iter);
    require_stable(bisim.stats, "bisimulation distance")?;
    let mut violations: Vec<Vec<String>> = vec![Vec::new(); order.len() + 1];
    for x in m.states() {
        for y in m.states() {
            let (a, b) = (m.singleton(x), m.singleton(y));
            let d = |s| -> Result<UnitValue, CliError> {
                let (v, stats) = distance(ctx, s, &a, &b)?;
                require_stable(stats, "distance")?;
                Ok(v)
            };
            for (i, &(lo, hi)) in order.iter().enumerate() {
                let (l, h) = (d(lo)?, d(hi)?);
                if l > h {
                    violations[i].push(format!("{} {}: {l} > {h}", ctx.name(x), ctx.name(y)));
                }
            }
            let pf = d(PossibleFuturesM)?.join(distance(ctx, PossibleFuturesM, &b, &a)?.0);
            if pf > bisim.value.get(x, y) {
                violations[order.len()].push(format!(
                    "{} {}: {pf} > {}",
                    ctx.name(x),
                    ctx.name(y),
                    bisim.value.get(x, y)
                ));
            }
        }
    }
    let mut names: Vec<String> = order
        .iter()
        .map(|(lo, hi)| format!("{} <= {}", value_name(lo), value_name(hi)))
        .collect();
    names.push("possible-futures-m (symmetrized) <= bisim-m".into());
    for (name, v) in names.into_iter().zip(violations) {
        let detail = match v.first() {
            None => "inequality holds".to_string(),
            Some(first) => format!("counterexample {first} ({} violations)", v.len()),
        };
        out.push(check(name, v.is_empty(), detail));
    }
    Ok(out)
}
