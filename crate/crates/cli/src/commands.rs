use std::collections::BTreeSet;
use std::fmt::Write;

use serde_json::{json, Value};

use asseq::hilbert::{
    e_invariants, multiplicity, sample_parameter_systems, verify_aux_bound, verify_hs_bound, HsRow, SampleKind,
    DEFAULT_MULTIPLICITY_CAP,
};
use asseq::ideal::Ideal;
use asseq::oracle::{oracle_diff_with, GroebnerEngine, MonomialTask, OracleEngine, TaskEngine, TaskKind};
use asseq::problem::{Problem, ProblemFile};
use asseq::rees::{check_independence, default_truncation, verify_assoc_graded, verify_rees_sym, IndependenceMode};
use asseq::sequence::{classify as run_classify, ClassifyOptions, SuperficialWindow};
use asseq::{Error, Result};

use crate::render::{ideal_json, outcome_json, preamble, preamble_json, table, verdict, yes_no};
use crate::{Common, IndepMode, OracleOp, Outcome, SampleMode};

fn load(c: &Common) -> Result<(ProblemFile, Problem)> {
    let file = ProblemFile::from_path(&c.problem)?;
    let problem = file.build()?;
    Ok((file, problem))
}

fn with_preamble(p: &Problem, command: &str, body: Value) -> Value {
    let mut v = json!({ "command": command, "problem": preamble_json(p) });
    if let (Value::Object(dst), Value::Object(src)) = (&mut v, body) {
        dst.extend(src);
    }
    v
}

fn done(text: String, json: Value) -> Result<Outcome> {
    Ok(Outcome { text, json, violation: false })
}

pub fn classify(c: &Common) -> Result<Outcome> {
    let (file, p) = load(c)?;
    let bounds = c.bounds.or(file.options.bounds).unwrap_or([3, 3]);
    let superficial = c.window.or(file.options.window).map(|[lo, hi]| SuperficialWindow {
        c: c.shift[0],
        d: c.shift[1],
        n_lo: lo,
        n_hi: hi,
    });
    let opts = ClassifyOptions { verify: c.verify, bounds: (bounds[0], bounds[1]), a: p.a.clone(), superficial };
    let rep = run_classify(&p.context, &opts)?;

    let mut s = preamble(&p);
    let _ = writeln!(
        s,
        "absolutely superficial: {}",
        match &rep.condition_v.witness {
            None => "YES (condition v)".to_string(),
            Some(_) => verdict(&rep.condition_v),
        }
    );
    if let Some(iv) = &rep.condition_iv {
        let _ = writeln!(s, "condition (iv): {}", verdict(iv));
    }
    if let Some(vi) = &rep.condition_vi {
        let _ = writeln!(s, "condition (vi) for m ≤ {}, n ≤ {}: {}", bounds[0], bounds[1], verdict(vi));
    }
    let _ = writeln!(s, "ideal a: {}", rep.a);
    let _ = writeln!(s, "filter-regular w.r.t. a: {}", verdict(&rep.filter_regular));
    let _ = writeln!(
        s,
        "weak w.r.t. a: {}",
        match &rep.weak {
            Some(w) => verdict(w),
            None => "not applicable (some a_i is outside a)".into(),
        }
    );
    let _ = writeln!(s, "regular: {}", verdict(&rep.regular));
    if let Some((w, o)) = &rep.superficial {
        let _ = writeln!(s, "superficial with c={}, d={}, n in [{}, {}]: {}", w.c, w.d, w.n_lo, w.n_hi, verdict(o));
    }

    let json = with_preamble(
        &p,
        "classify",
        json!({
            "absolutely_superficial": rep.as_sequence,
            "condition": "v",
            "conditions": {
                "v": outcome_json(&rep.condition_v),
                "iv": rep.condition_iv.as_ref().map(outcome_json),
                "vi": rep.condition_vi.as_ref().map(outcome_json),
            },
            "bounds": [rep.bounds.0, rep.bounds.1],
            "a": ideal_json(&rep.a),
            "filter_regular": outcome_json(&rep.filter_regular),
            "weak": rep.weak.as_ref().map(outcome_json),
            "regular": outcome_json(&rep.regular),
            "superficial": rep.superficial.as_ref().map(|(w, o)| json!({
                "c": w.c, "d": w.d, "window": [w.n_lo, w.n_hi], "outcome": outcome_json(o),
            })),
        }),
    );
    done(s, json)
}

fn hs_rows(rows: &[HsRow]) -> (Vec<Vec<String>>, Value) {
    let text = rows
        .iter()
        .map(|r| vec![r.n.to_string(), r.lhs.to_string(), r.rhs.to_string(), if r.equal() { "=" } else { "<" }.into()])
        .collect();
    let json = json!(rows
        .iter()
        .map(|r| json!({"n": r.n, "lhs": r.lhs, "rhs": r.rhs, "equal": r.equal()}))
        .collect::<Vec<_>>());
    (text, json)
}

fn e_text(e: &[i64]) -> String {
    format!("({})", e.iter().map(i64::to_string).collect::<Vec<_>>().join(", "))
}

pub fn hs(c: &Common) -> Result<Outcome> {
    let (file, p) = load(c)?;
    let n_max = c.n_max.or(file.options.n_max).unwrap_or(6);
    let rep = verify_hs_bound(&p.context, n_max)?;
    let mult = match multiplicity(&p.context, 3, DEFAULT_MULTIPLICITY_CAP) {
        Ok(e) => Some(e),
        Err(Error::NoStabilization { .. }) => None,
        Err(e) => return Err(e),
    };
    let (rows, rows_json) = hs_rows(&rep.rows);
    let mut s = preamble(&p);
    let _ = writeln!(s, "e = {}", e_text(&rep.e.e));
    s += &table(&["n", "l(M/q^{n+1}M)", "bound", ""], &rows);
    let _ = writeln!(s, "bound holds for n ≤ {n_max}: {}", yes_no(rep.bound_holds));
    let _ = writeln!(s, "equality for every n ≤ {n_max}: {}", yes_no(rep.equality_all_n));
    let _ = writeln!(s, "absolutely superficial: {}", yes_no(rep.as_sequence));
    if rep.window_mismatch {
        let _ = writeln!(s, "note: equality and the a.s. verdict differ on this window; equality is only guaranteed for infinitely many n (window too small?)");
    }
    match mult {
        Some(e) => {
            let _ = writeln!(s, "multiplicity e(q;M) = {e}");
        }
        None => {
            let _ = writeln!(s, "multiplicity: no stabilization up to n = {DEFAULT_MULTIPLICITY_CAP}");
        }
    }
    let json = with_preamble(
        &p,
        "hs",
        json!({
            "n_max": n_max,
            "e": rep.e.e,
            "rows": rows_json,
            "bound_holds": rep.bound_holds,
            "equality_all_n": rep.equality_all_n,
            "absolutely_superficial": rep.as_sequence,
            "window_too_small": rep.window_mismatch,
            "multiplicity": mult,
        }),
    );
    done(s, json)
}

pub fn einv(c: &Common) -> Result<Outcome> {
    let (_, p) = load(c)?;
    let e = e_invariants(&p.context)?;
    let mut s = preamble(&p);
    let _ = writeln!(s, "l(M/qM) = {}", e.colength);
    for (j, l) in e.colon_lengths.iter().enumerate() {
        let _ = writeln!(s, "L_{} = l((q_{}M : a_{}) / (q_{}M : a_{}) ∩ qM) = {l}", j + 1, j, j + 1, j, j + 1);
    }
    for (i, v) in e.e.iter().enumerate() {
        let _ = writeln!(s, "e_{i} = {v}");
    }
    let json = with_preamble(&p, "einv", json!({"e": e.e, "colon_lengths": e.colon_lengths, "colength": e.colength}));
    done(s, json)
}

pub fn indep(c: &Common, mode: IndepMode, n: usize) -> Result<Outcome> {
    let (_, p) = load(c)?;
    let sub = p.n.as_ref().ok_or_else(|| Error::InvalidArgument("the problem file has no [ideals] N".into()))?;
    let ctx = &p.context;
    let colon = match mode {
        IndepMode::Colon | IndepMode::Both => Some(check_independence(ctx, sub, IndependenceMode::Colon, n)?),
        IndepMode::Length => None,
    };
    let length = match mode {
        IndepMode::Length => Some(check_independence(ctx, sub, IndependenceMode::Length, n)?),
        IndepMode::Both if ctx.is_system_of_parameters()? => {
            Some(check_independence(ctx, sub, IndependenceMode::Length, n)?)
        }
        _ => None,
    };
    let mut s = preamble(&p);
    let _ = writeln!(s, "N: {}", sub.carrier());
    if let Some(r) = &colon {
        let _ = write!(s, "colon criterion (all permutations): {}", yes_no(r.holds));
        if let Some(perm) = &r.failing_permutation {
            let order: Vec<String> = perm.iter().map(|k| format!("a_{}", k + 1)).collect();
            let _ = write!(s, ", fails for the order {}", order.join(", "));
        }
        s.push('\n');
    }
    if let Some(r) = &length {
        let (lhs, rhs) = r.lengths.expect("length mode reports lengths");
        let _ = writeln!(
            s,
            "length criterion at n = {n}: l(q^nM/q^nN) = {lhs}, C(n+r-1, r-1) l(M/N) = {rhs}: {}",
            yes_no(r.holds)
        );
    }
    let disagree = matches!((&colon, &length), (Some(a), Some(b)) if a.holds != b.holds);
    if disagree {
        let _ = writeln!(s, "internal property violation: the colon and length criteria disagree");
    }
    let json = with_preamble(
        &p,
        "indep",
        json!({
            "n": n,
            "N": ideal_json(sub.carrier()),
            "colon": colon.as_ref().map(|r| json!({"holds": r.holds, "failing_permutation": r.failing_permutation})),
            "length": length.as_ref().map(|r| {
                let (lhs, rhs) = r.lengths.expect("length mode reports lengths");
                json!({"holds": r.holds, "lhs": lhs, "rhs": rhs})
            }),
            "agree": !disagree,
        }),
    );
    Ok(Outcome { text: s, json, violation: disagree })
}

pub fn rees(c: &Common, k: Option<u32>) -> Result<Outcome> {
    let (file, p) = load(c)?;
    let d_max = c.d_max.or(file.options.d_max).unwrap_or(3);
    let k = k.unwrap_or_else(|| default_truncation(&p.context, d_max));
    let rep = verify_rees_sym(&p.context, d_max, Some(k))?;
    let mut s = preamble(&p);
    let _ = write!(
        s,
        "every vanishing form of degree ≤ {d_max} is generated by linear ones (truncation {k}, re-run at {}): {}",
        k + 2,
        yes_no(rep.holds)
    );
    if let Some(d) = rep.first_failing_degree {
        let _ = write!(s, ", first failing degree {d}, witness {}", rep.witness.as_deref().unwrap_or("?"));
    }
    s.push('\n');
    if !rep.stable {
        let _ = writeln!(s, "note: the verdicts at truncations {k} and {} differ", k + 2);
    }
    let json = with_preamble(
        &p,
        "rees",
        json!({
            "d_max": d_max,
            "k": rep.k,
            "holds": rep.holds,
            "stable": rep.stable,
            "first_failing_degree": rep.first_failing_degree,
            "witness": rep.witness,
        }),
    );
    done(s, json)
}

pub fn graded(c: &Common, index: Option<usize>) -> Result<Outcome> {
    let (file, p) = load(c)?;
    let n_max = c.n_max.or(file.options.n_max).unwrap_or(4);
    let indices: Vec<usize> = match index {
        Some(i) => vec![i],
        None => (1..=p.context.len()).collect(),
    };
    let mut s = preamble(&p);
    let mut reports = Vec::new();
    for i in indices {
        let rep = verify_assoc_graded(&p.context, i, n_max, c.force)?;
        let rows: Vec<Vec<String>> = rep
            .rows
            .iter()
            .map(|r| vec![r.n.to_string(), r.quotient_slice.to_string(), r.graded_quotient.to_string()])
            .collect();
        let _ = writeln!(s, "i = {i}: G_q(M/q_iM) ≅ G_q(M)/q_iG_q(M) in degrees ≤ {n_max}: {}", yes_no(rep.holds));
        s += &table(&["n", "G_q(M/q_iM)_n", "(G_q(M)/q_iG_q(M))_n"], &rows);
        reports.push(json!({
            "i": i,
            "holds": rep.holds,
            "rows": rep.rows.iter().map(|r| json!({"n": r.n, "lhs": r.quotient_slice, "rhs": r.graded_quotient})).collect::<Vec<_>>(),
        }));
    }
    let all = reports.iter().all(|r| r["holds"] == json!(true));
    let json = with_preamble(&p, "graded", json!({"n_max": n_max, "forced": c.force, "holds": all, "slices": reports}));
    done(s, json)
}

pub fn aux_bound(c: &Common) -> Result<Outcome> {
    let (file, p) = load(c)?;
    let a = p.a.as_ref().ok_or_else(|| Error::InvalidArgument("the problem file has no [ideals] a".into()))?;
    let n_max = c.n_max.or(file.options.n_max).unwrap_or(6);
    let rep = verify_aux_bound(&p.context, a, n_max)?;
    let (rows, rows_json) = hs_rows(&rep.rows);
    let mut s = preamble(&p);
    let _ = writeln!(s, "a: {a}");
    let _ = writeln!(s, "e = {}", e_text(&rep.e.e));
    s += &table(&["n", "l(M/a^{n+1}M)", "bound", ""], &rows);
    let _ = writeln!(s, "bound holds for n ≤ {n_max}: {}", yes_no(rep.bound_holds));
    let _ = writeln!(s, "equality for every n ≤ {n_max}: {}", yes_no(rep.equality_all_n));
    let _ = writeln!(
        s,
        "(i) q^n a M = a^(n+1) M for some n ≤ {n_max}: {}",
        match rep.condition_i {
            Some(n) => format!("YES (n = {n})"),
            None => "NO".into(),
        }
    );
    let _ = writeln!(s, "(ii) absolutely superficial: {}", yes_no(rep.condition_ii));
    let _ = writeln!(s, "(iii) permuted colons lie in aM + (0 :_M m^∞): {}", yes_no(rep.condition_iii));
    let json = with_preamble(
        &p,
        "aux-bound",
        json!({
            "a": ideal_json(a),
            "n_max": n_max,
            "e": rep.e.e,
            "rows": rows_json,
            "bound_holds": rep.bound_holds,
            "equality_all_n": rep.equality_all_n,
            "condition_i": rep.condition_i,
            "condition_ii": rep.condition_ii,
            "condition_iii": rep.condition_iii,
        }),
    );
    done(s, json)
}

pub fn oracle_diff(c: &Common, op: OracleOp, power: u32, inject_fault: bool) -> Result<Outcome> {
    let (_, p) = load(c)?;
    let ctx = &p.context;
    let j = ctx.module().defining_ideal();
    let kind = match op {
        OracleOp::Colon => TaskKind::Colon,
        OracleOp::ColonIdeal => TaskKind::ColonIdeal,
        OracleOp::Intersect => TaskKind::Intersect,
        OracleOp::Sum => TaskKind::Sum,
        OracleOp::Product => TaskKind::Product,
        OracleOp::Power => TaskKind::Power(power),
        OracleOp::Saturate => TaskKind::Saturate,
        OracleOp::Length => TaskKind::Length,
    };
    let right: Option<Ideal> = match kind {
        TaskKind::Power(_) | TaskKind::Length => None,
        TaskKind::Colon => {
            let f = ctx
                .elements()
                .first()
                .ok_or_else(|| Error::InvalidArgument("colon needs a sequence element".into()))?;
            Some(Ideal::new(&p.ring, vec![f.clone()])?)
        }
        _ => Some(p.a.clone().unwrap_or_else(|| ctx.q().clone())),
    };
    let task = MonomialTask::from_ideals(kind, j, right.as_ref())?;
    let engine = if inject_fault { GroebnerEngine::faulty() } else { GroebnerEngine::default() };
    let rep = oracle_diff_with(&task, &engine, &OracleEngine)?;
    let mut s = String::new();
    let _ = writeln!(s, "task: {task}");
    let _ = writeln!(s, "engines: {} vs {}", engine.name(), OracleEngine.name());
    match &rep.counterexample {
        None => {
            let _ = writeln!(s, "result: {}", rep.outcome);
            let _ = writeln!(s, "agree: YES");
        }
        Some(d) => {
            let _ = writeln!(s, "agree: NO");
            let _ = writeln!(s, "shrunk counterexample: {}", d.task);
            let _ = writeln!(s, "  {}: {}", engine.name(), d.left);
            let _ = writeln!(s, "  {}: {}", OracleEngine.name(), d.right);
        }
    }
    let json = json!({
        "command": "oracle-diff",
        "task": task.to_string(),
        "engines": [engine.name(), OracleEngine.name()],
        "agree": rep.agree,
        "outcome": rep.outcome,
        "counterexample": rep.counterexample.as_ref().map(|d| json!({
            "task": d.task.to_string(), "left": d.left, "right": d.right,
        })),
    });
    Ok(Outcome { text: s, json, violation: !rep.agree })
}

pub fn sample_sop(c: &Common, count: usize, mode: SampleMode) -> Result<Outcome> {
    let (file, p) = load(c)?;
    let seed = c.seed.or(file.options.seed).unwrap_or(0);
    let kind = match mode {
        SampleMode::Linear => SampleKind::Linear,
        SampleMode::Monomial => SampleKind::Monomial,
    };
    let samples = sample_parameter_systems(p.context.module(), kind, count, seed, count.max(1) * 100)?;
    let rows: Vec<Vec<String>> = samples
        .iter()
        .map(|x| {
            let q: Vec<String> = x.elements.iter().map(|a| a.to_string()).collect();
            vec![
                format!("({})", q.join(", ")),
                x.colength.to_string(),
                x.multiplicity.to_string(),
                x.defect().to_string(),
                yes_no(x.as_sequence).to_string(),
            ]
        })
        .collect();
    let defects: BTreeSet<u64> = samples.iter().map(|x| x.defect()).collect();
    let mut s = preamble(&p);
    let _ = writeln!(s, "seed: {seed}");
    s += &table(&["q", "l(M/qM)", "e(q;M)", "difference", "a.s."], &rows);
    let _ = writeln!(
        s,
        "{} of {count} requested samples; l(M/qM) - e(q;M) takes the values {:?}: {}",
        samples.len(),
        defects,
        if defects.len() <= 1 {
            "constant on this sample (evidence only, not a certificate)"
        } else {
            "not constant, so M is not Buchsbaum"
        }
    );
    let json = with_preamble(
        &p,
        "sample-sop",
        json!({
            "seed": seed,
            "mode": format!("{mode:?}").to_lowercase(),
            "samples": samples.iter().map(|x| json!({
                "elements": x.elements.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
                "colength": x.colength,
                "multiplicity": x.multiplicity,
                "absolutely_superficial": x.as_sequence,
            })).collect::<Vec<_>>(),
            "differences": defects,
            "constant": defects.len() <= 1,
        }),
    );
    done(s, json)
}
