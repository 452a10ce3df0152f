use dcc::codefamily::{membership_certificates, CodeFamily, FamilyRecord};
use dcc::csscode::{check_evenness, make_code, CleanabilityTable, EvennessWitness, MAX_CLEANABILITY_QUBITS};
use dcc::f2core::{BitVector, OddWeight, Subspace};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &str, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.into(),
        passed,
        detail: detail.into(),
    }
}

fn subset(small: &Subspace, big: &Subspace) -> bool {
    small.is_subspace_of(big).unwrap_or(false)
}

fn span(n: usize, vs: &[BitVector]) -> Option<Subspace> {
    Subspace::span(n, vs).ok()
}

fn evenness(s: &Subspace, w: Option<&EvennessWitness>, order: u8) -> (bool, String) {
    match w {
        None => (false, "no witness".into()),
        Some(w) => {
            let ok = w.order == order && w.m() % 2 != 0 && check_evenness(s, w).unwrap_or(false);
            (ok, format!("order {} witness, |M+| = {}, |M-| = {}", w.order, w.plus.len(), w.minus.len()))
        }
    }
}

/// min{d(A), d(B)} searched up to `budget`.
fn distance(a: &Subspace, b: &Subspace, budget: usize) -> Result<OddWeight, String> {
    let da = a.min_odd_weight(Some(budget)).map_err(|e| e.to_string())?;
    let db = b.min_odd_weight(Some(budget)).map_err(|e| e.to_string())?;
    // A side searched exhaustively may report an exact value past the budget.
    Ok(match (da.exact(), db.exact()) {
        (Some(x), Some(y)) => OddWeight::Exact(x.min(y)),
        (Some(x), None) | (None, Some(x)) if x <= budget => OddWeight::Exact(x),
        _ => OddWeight::ExceedsMax(budget),
    })
}

/// Default search bound: 2t+1, capped where the weight search gets slow
/// (about 5 s at t = 3 with bound 5).
fn default_budget(t: usize) -> usize {
    match t {
        0..=3 => (2 * t + 1).min(5),
        _ => 3,
    }
}

/// Runs every check on a decoded family file. A file whose subspaces cannot
/// be decoded is reported as a single failed "decode" check.
pub fn verify(record: &FamilyRecord, budget: Option<usize>) -> Vec<Check> {
    let mut out = Vec::new();
    let t = record.t;
    if record.codes.len() != 3 {
        out.push(check("decode", false, format!("expected 3 codes, found {}", record.codes.len())));
        return out;
    }
    let decoded: Result<Vec<(Subspace, Subspace)>, _> = record.codes.iter().map(|c| c.subspaces()).collect();
    let spaces = match decoded {
        Ok(s) => s,
        Err(e) => {
            out.push(check("decode", false, e.to_string()));
            return out;
        }
    };
    let [(t_a, t_b), (c_a, c_b), (base_a, base_b)] = [&spaces[0], &spaces[1], &spaces[2]].map(|(a, b)| (a, b));
    let n = t_a.ambient();
    out.push(check(
        "qubit count",
        record.codes.iter().all(|c| c.n == n) && record.qubit_counts.n == n,
        format!(
            "n = {n}; doubled {}, gadget {}, subdivided {}, final {}",
            record.qubit_counts.doubled,
            record.qubit_counts.gadget,
            record.qubit_counts.subdivided,
            record.qubit_counts.final_count
        ),
    ));

    let c_dot = c_a.dot();
    let chain = t_a.is_even()
        && subset(t_a, c_a)
        && subset(c_a, &c_dot)
        && subset(&c_dot, t_b);
    out.push(check("inclusion chain", chain, "T in C in dot C in dot T"));
    out.push(check("T-code regular", *t_b == t_a.dot(), "gauge of the T-code is dot T"));
    out.push(check("C-code", c_a == c_b, "C-code is CSS(C, C)"));
    out.push(check("base code", base_a == t_a && base_b == c_a, "base code is CSS(T, C)"));

    let support = |g: &dcc::codefamily::GeneratorRecord| BitVector::from_indices(n, &g.support).ok();
    let gens: Vec<BitVector> = record.generators.iter().filter_map(support).collect();
    let c_gens: Vec<BitVector> = record.generators.iter().filter(|g| g.kind.in_c_gauge()).filter_map(support).collect();
    let gens_ok = gens.len() == record.generators.len()
        && span(n, &gens).as_ref() == Some(t_b)
        && span(n, &c_gens).as_ref() == Some(&c_dot);
    out.push(check(
        "generators",
        gens_ok,
        format!("{} generators span dot T; non-edge ones span dot C", gens.len()),
    ));

    // Transversal T needs B = dot A and a triply-even witness with odd m;
    // S needs A in B and a doubly-even one; H needs A = B.
    let (t_even, t_detail) = evenness(t_a, record.codes[0].witness.as_ref(), 8);
    let (c_even, c_detail) = evenness(c_a, record.codes[1].witness.as_ref(), 4);
    out.push(check("T evenness", t_even, t_detail));
    out.push(check("C evenness", c_even, c_detail));
    out.push(check("transversal T", t_even && *t_b == t_a.dot(), "T-code"));
    out.push(check("transversal H", c_a == c_b, "C-code"));
    out.push(check("transversal S", c_even && subset(c_a, c_b), "C-code"));

    out.push(check(
        "stored certificates",
        record.certificates.iter().all(|c| c.passed),
        format!("{} membership certificates in file", record.certificates.len()),
    ));
    match CodeFamily::build(t, record.stage) {
        Ok(fam) => {
            let rebuilt = membership_certificates(&fam);
            let same = fam.t_stabilizer() == t_a && fam.c_stabilizer() == c_a;
            out.push(check(
                "membership certificates",
                rebuilt.all_passed() && rebuilt.checks == record.certificates && same,
                format!(
                    "{} certificates recomputed; file codes match the construction: {same}",
                    rebuilt.checks.len()
                ),
            ));
        }
        Err(e) => out.push(check("membership certificates", false, e.to_string())),
    }

    if n <= MAX_CLEANABILITY_QUBITS {
        let table = make_code("T", t_a.clone(), t_b.clone()).and_then(|c| CleanabilityTable::build(&c));
        match table {
            Ok(table) => {
                let ok = t != 1 || table.count() == 996;
                out.push(check("cleanable cosets", ok, format!("cleanable cosets = {}", table.count())));
            }
            Err(e) => out.push(check("cleanable cosets", false, e.to_string())),
        }
    }

    let target = 2 * t + 1;
    let budget = budget.unwrap_or_else(|| default_budget(t));
    // The stored logical representative bounds d(A) from above.
    let witness = record
        .x_logical
        .as_ref()
        .and_then(|s| BitVector::from_indices(n, s).ok())
        .filter(|x| x.weight() % 2 == 1 && t_a.basis().rows().iter().all(|r| !r.dot(x)))
        .map(|x| x.weight());
    match distance(t_a, t_b, budget) {
        Ok(OddWeight::Exact(d)) => out.push(check("distance", d == target, format!("d = {d}"))),
        Ok(OddWeight::ExceedsMax(m)) => {
            let ok = witness == Some(target);
            let w = witness.map_or("no witness".to_string(), |w| format!("witness <= {w}"));
            out.push(check("distance", ok, format!("d > {m}, {w}")));
        }
        Err(e) => out.push(check("distance", false, e)),
    }
    out
}
