//! Per-coloring structure checks: Euler parities, circle parities, Kempe
//! moves relative to pigments 1 and 2, and the transposition action.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;

use crate::foamcore::{
    apply_kempe, bichrome_euler, bichrome_euler_direct, enumerate_colorings, intersection_euler, kempe_components,
    monochrome_euler, theta_counts, Coloring, Foam, FoamError,
};
use crate::foameval::{eval_colored, int_point, s_invariant};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Lemma {
    /// `χ(F_i)` and `χ(F_ij)` are even, and `χ(F_ij) = χ(F_i) + χ(F_j) − 2χ(F_{i∩j})`.
    EulerEven,
    /// `χ(F_{i∩j}) ≡ θ⁺_ij + θ⁻_ij (mod 2)`.
    IntersectionParity,
    /// `θ⁺_1k + θ⁺_2k` is preserved mod 2 by a Kempe move relative to 1, 2.
    KempeParity,
    /// A Kempe move relative to 1, 2 moves Euler characteristic between
    /// `F_1k` and `F_2k`.
    KempeExchange,
    /// Swapping pigments `i, i+1` swaps the variables `X_i, X_{i+1}`.
    Transposition,
    /// A Kempe move along `Σ` changes `s` by `χ(Σ)/2` mod 2.
    SignKempe,
}

impl Lemma {
    pub const ALL: [Lemma; 6] = [
        Lemma::EulerEven,
        Lemma::IntersectionParity,
        Lemma::KempeParity,
        Lemma::KempeExchange,
        Lemma::Transposition,
        Lemma::SignKempe,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Lemma::EulerEven => "euler-even",
            Lemma::IntersectionParity => "intersection-parity",
            Lemma::KempeParity => "kempe-parity",
            Lemma::KempeExchange => "kempe-exchange",
            Lemma::Transposition => "transposition",
            Lemma::SignKempe => "sign-kempe",
        }
    }
}

impl fmt::Display for Lemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Instances checked and failures found for one lemma.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LemmaTally {
    pub checked: u64,
    pub failures: Vec<String>,
}

impl LemmaTally {
    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

pub type LemmaReport = BTreeMap<Lemma, LemmaTally>;

fn fmt_coloring(c: &Coloring) -> String {
    let parts: Vec<String> = c.0.iter().map(|s| format!("{s:b}")).collect();
    format!("[{}]", parts.join(","))
}

/// Two fixed points with pairwise distinct coordinates.
fn sample_points(n: usize) -> [Vec<BigRational>; 2] {
    let p: Vec<i64> = (0..n as i64).map(|k| 3 * k * k + 2 * k + 1).collect();
    let q: Vec<i64> = (0..n as i64).map(|k| 7 - 5 * k - k * k * k).collect();
    [int_point(&p), int_point(&q)]
}

fn swap_pigments(c: &Coloring, i: usize) -> Coloring {
    let (bi, bj) = (1u32 << (i - 1), 1u32 << i);
    Coloring(
        c.0.iter()
            .map(|&s| {
                let mut t = s & !(bi | bj);
                if s & bi != 0 {
                    t |= bj;
                }
                if s & bj != 0 {
                    t |= bi;
                }
                t
            })
            .collect(),
    )
}

fn parity(x: i64) -> i64 {
    x.rem_euclid(2)
}

/// Runs every check over every coloring of `f`.
pub fn check_lemmas(f: &Foam) -> Result<LemmaReport, FoamError> {
    let mut rep: LemmaReport = Lemma::ALL.iter().map(|&l| (l, LemmaTally::default())).collect();
    let n = f.n;
    let points = sample_points(n);
    for c in enumerate_colorings(f) {
        let tag = fmt_coloring(&c);
        let t = rep.get_mut(&Lemma::EulerEven).expect("all lemmas present");
        for i in 1..=n {
            let r = monochrome_euler(f, &c, i);
            t.record(r.is_ok(), || format!("{tag}: χ(F_{i}) odd"));
        }
        for i in 1..=n {
            for j in i + 1..=n {
                let direct = bichrome_euler_direct(f, &c, i, j)?;
                let combined = bichrome_euler(f, &c, i, j);
                t.record(direct % 2 == 0 && combined.as_ref().ok() == Some(&direct), || {
                    format!("{tag}: χ(F_{i}{j}) = {direct}, combination gives {combined:?}")
                });
            }
        }

        let t = rep.get_mut(&Lemma::IntersectionParity).expect("all lemmas present");
        for i in 1..=n {
            for j in i + 1..=n {
                let chi = intersection_euler(f, &c, i, j)?;
                let (p, m) = theta_counts(f, &c, i, j)?;
                t.record(parity(chi) == parity((p + m) as i64), || {
                    format!("{tag}: χ(F_{i}∩{j}) = {chi}, θ = {p}+{m}")
                });
            }
        }

        let t = rep.get_mut(&Lemma::Transposition).expect("all lemmas present");
        let v = eval_colored(f, &c).map_err(|e| FoamError::BadColoring(e.to_string()))?;
        for i in 1..n {
            let c2 = swap_pigments(&c, i);
            let v2 = eval_colored(f, &c2).map_err(|e| FoamError::BadColoring(e.to_string()))?;
            for pt in &points {
                let mut sw = pt.clone();
                sw.swap(i - 1, i);
                let a = v2.specialize(pt).map_err(|e| FoamError::BadColoring(e.to_string()))?;
                let b = v.specialize(&sw).map_err(|e| FoamError::BadColoring(e.to_string()))?;
                t.record(a == b, || format!("{tag}: swapping {i},{} gives {a:?} vs {b:?}", i + 1));
            }
        }

        if n < 2 {
            continue;
        }
        let s0 = s_invariant(f, &c)?;
        let theta_plus = |c: &Coloring, i: usize, k: usize| theta_counts(f, c, i, k).map(|x| x.0 as i64);
        for comp in kempe_components(f, &c, 1, 2)? {
            let c2 = apply_kempe(f, &c, 1, 2, comp.id)?;
            for k in 3..=n {
                let before = theta_plus(&c, 1, k)? + theta_plus(&c, 2, k)?;
                let after = theta_plus(&c2, 1, k)? + theta_plus(&c2, 2, k)?;
                rep.get_mut(&Lemma::KempeParity).expect("all lemmas present").record(parity(before) == parity(after), || {
                    format!("{tag}: Kempe along component {} changes θ⁺_1{k}+θ⁺_2{k} from {before} to {after}", comp.id)
                });
                let d1 = bichrome_euler_direct(f, &c2, 1, k)? - bichrome_euler_direct(f, &c, 1, k)?;
                let d2 = bichrome_euler_direct(f, &c2, 2, k)? - bichrome_euler_direct(f, &c, 2, k)?;
                rep.get_mut(&Lemma::KempeExchange).expect("all lemmas present").record(d1 == -d2, || {
                    format!("{tag}: Kempe along component {}: Δχ(F_1{k}) = {d1}, Δχ(F_2{k}) = {d2}", comp.id)
                });
            }
            let s1 = s_invariant(f, &c2)?;
            rep.get_mut(&Lemma::SignKempe).expect("all lemmas present").record(
                parity(s1 - s0 - comp.euler / 2) == 0,
                || format!("{tag}: s goes {s0} → {s1} along a component with χ = {}", comp.euler),
            );
        }
    }
    Ok(rep)
}

/// Adds `other` into `acc`, prefixing failure messages with `name`.
pub fn merge_reports(acc: &mut LemmaReport, name: &str, other: LemmaReport) {
    for (l, t) in other {
        let e = acc.entry(l).or_default();
        e.checked += t.checked;
        e.failures.extend(t.failures.into_iter().map(|m| format!("{name}: {m}")));
    }
}
