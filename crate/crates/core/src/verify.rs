//! Verification suites over bounded parameter ranges.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cellular::{cell_datum_check, CellOrder};
use crate::codet::{codet_basis, exact_rank, unimodular_change};
use crate::error::{Error, Result};
use crate::linalg::rank;
use crate::pbw::{pbw_image, ubas_change, verify_idempotent_lemma, PbwForm};
use crate::perm::Permutation;
use crate::rational::q;
use crate::schur::{decompose, hom_basis, schur_basis, SchurElement, SymmetricGroupIso};
use crate::tableau::kostka;
use crate::tensor::TensorSpace;
use crate::udot::{
    divided_generators, gl2_b, gl2_generic_table, pattern, psi, u0_symmetric_group, udot_basis_upto, udot_multiply,
    GeneratorSide, UdotElement,
};
use crate::weights::{compositions, dominant_compositions, margin_matrices, theta, Weight};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn new(id: impl Into<String>, passed: bool, witness: impl FnOnce() -> String) -> Check {
        Check { id: id.into(), passed, witness: (!passed).then(witness) }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub params: Value,
    pub passed: bool,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub details: Vec<Value>,
}

impl VerificationReport {
    fn new(suite: &str, params: Value, mut checks: Vec<Check>, details: Vec<Value>) -> Self {
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        let passed = checks.iter().all(|c| c.passed);
        VerificationReport { suite: suite.to_string(), params, passed, checks, details }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

#[derive(Clone, Debug)]
pub struct SuiteParams {
    pub n: usize,
    pub r: usize,
    pub degree: Option<u32>,
    pub window: i64,
    pub lambda: Option<Weight>,
    pub seed: u64,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams { n: 3, r: 3, degree: None, window: 3, lambda: None, seed: 2024 }
    }
}

pub const SUITES: [&str; 9] = ["gbasis", "codet", "zbas", "idem-lemma", "cellular", "relations", "psi", "gl2", "sym-quotient"];

pub fn run_suite(name: &str, p: &SuiteParams) -> Result<VerificationReport> {
    match name {
        "gbasis" => gbasis(p.n, p.r),
        "codet" => codet(p.n, p.r),
        "zbas" => zbas(p.n, p.r, p.degree.unwrap_or(2)),
        "idem-lemma" => idem_lemma(p.n, p.r),
        "cellular" => cellular(p.n, p.r, p.lambda.as_ref()),
        "relations" => relations(p.n, p.window),
        "psi" => psi_suite(p.n, p.r, p.degree.unwrap_or(p.r as u32), p.seed),
        "gl2" => gl2(p.lambda.clone().unwrap_or(Weight::new(vec![2, 1])?), p.degree.unwrap_or(4)),
        "sym-quotient" => sym_quotient(p.r),
        other => Err(Error::InvalidArgument(format!("unknown suite '{other}'"))),
    }
}

fn pairs(n: usize, r: usize) -> Vec<(Weight, Weight)> {
    let comps = compositions(n, r);
    comps.iter().flat_map(|l| comps.iter().map(move |m| (l.clone(), m.clone()))).collect()
}

fn params(n: usize, r: usize) -> Value {
    json!({ "n": n, "r": r })
}

/// ξ-basis of each `1_λ S 1_μ`: independent as endomorphisms, closed under
/// decomposition, and of size `|margin_matrices(λ, μ)|`.
pub fn gbasis(n: usize, r: usize) -> Result<VerificationReport> {
    let space = TensorSpace::new(n, r)?;
    let checks = pairs(n, r)
        .par_iter()
        .map(|(l, m)| -> Result<Check> {
            let basis = hom_basis(l, m)?;
            let endos: Vec<_> = basis.iter().map(|x| x.to_endo().map(|e| e.as_vector())).collect::<Result<_>>()?;
            let independent = rank(&endos) == basis.len();
            let mut roundtrip = true;
            for x in &basis {
                roundtrip &= decompose(&space, x)? == *x;
            }
            let dim = margin_matrices(l, m)?.len();
            let kk: u64 = dominant_compositions(n, r).iter().map(|nu| kostka(nu, l).unwrap_or(0) * kostka(nu, m).unwrap_or(0)).sum();
            let ok = independent && roundtrip && basis.len() == dim && kk as usize == dim;
            Ok(Check::new(format!("gbasis/{l}/{m}"), ok, || {
                format!("independent={independent} roundtrip={roundtrip} size={} margins={dim} kostka={kk}", basis.len())
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport::new("gbasis", params(n, r), checks, vec![]))
}

/// Codeterminants with semistandard tableaux have full rank in each block.
pub fn codet(n: usize, r: usize) -> Result<VerificationReport> {
    TensorSpace::new(n, r)?;
    let checks = pairs(n, r)
        .par_iter()
        .map(|(l, m)| -> Result<Check> {
            let values: Vec<SchurElement> = codet_basis(l, m)?.into_iter().map(|c| c.value).collect();
            let dim = margin_matrices(l, m)?.len();
            let rk = exact_rank(&values)?;
            Ok(Check::new(format!("codet/{l}/{m}"), rk == dim && values.len() == dim, || {
                format!("{} codeterminants of rank {rk}, dimension {dim}", values.len())
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport::new("codet", params(n, r), checks, vec![]))
}

/// Both divided-power families are ℤ-bases of each block; the PSA forms are
/// ℤ-bases of `S_ℤ(n, r)`; the two PBW orders of `U_ℤ` differ unimodularly.
pub fn zbas(n: usize, r: usize, ubas_degree: u32) -> Result<VerificationReport> {
    TensorSpace::new(n, r)?;
    let mut checks = pairs(n, r)
        .par_iter()
        .flat_map_iter(|(l, m)| {
            [PbwForm::ZbasA, PbwForm::ZbasB].into_iter().map(move |form| -> Result<Check> {
                let basis = hom_basis(l, m)?;
                let images: Vec<_> = margin_matrices(l, m)?.iter().map(|a| pbw_image(a, form)).collect::<Result<_>>()?;
                let ch = unimodular_change(&images, &basis)?;
                Ok(Check::new(format!("zbas/{}/{l}/{m}", form.name()), ch.unimodular, || {
                    format!("in_span={} integral={} det={:?}", ch.in_span, ch.integral, ch.determinant.map(|d| d.to_string()))
                }))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let xi = schur_basis(n, r)?;
    for form in [PbwForm::PsaA, PbwForm::PsaB] {
        let images: Vec<_> = theta(n, r).par_iter().map(|a| pbw_image(a, form)).collect::<Result<_>>()?;
        let ch = unimodular_change(&images, &xi)?;
        checks.push(Check::new(format!("psa/{}", form.name()), ch.unimodular, || {
            format!("in_span={} integral={} det={:?}", ch.in_span, ch.integral, ch.determinant.map(|d| d.to_string()))
        }));
    }
    let ch = ubas_change(n, ubas_degree)?;
    checks.push(Check::new(format!("ubas/degree<={ubas_degree}"), ch.unimodular, || {
        format!("size={} in_span={} integral={}", ch.size, ch.in_span, ch.integral)
    }));
    Ok(VerificationReport::new("zbas", json!({ "n": n, "r": r, "degree": ubas_degree }), checks, vec![]))
}

/// `dρ(∏ binom(H_i, λ_i)) = 1_λ` for every `λ ∈ Λ(n, r)`.
pub fn idem_lemma(n: usize, r: usize) -> Result<VerificationReport> {
    TensorSpace::new(n, r)?;
    let checks = compositions(n, r)
        .par_iter()
        .map(|l| Ok(Check::new(format!("idem/{l}"), verify_idempotent_lemma(l)?, || "matrices differ".into())))
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport::new("idem-lemma", params(n, r), checks, vec![]))
}

pub fn cellular(n: usize, r: usize, lambda: Option<&Weight>) -> Result<VerificationReport> {
    TensorSpace::new(n, r)?;
    let lambdas = match lambda {
        Some(l) => {
            if l.n() != n || l.degree() != r as i64 {
                return Err(Error::InvalidArgument(format!("{l} is not in Lambda({n},{r})")));
            }
            vec![l.clone()]
        }
        None => compositions(n, r),
    };
    let reports = lambdas.iter().map(|l| cell_datum_check(l, CellOrder::MoreDominant)).collect::<Result<Vec<_>>>()?;
    let mut checks = Vec::new();
    let mut details = Vec::new();
    for rep in &reports {
        let l = Weight::new(rep.lambda.clone())?;
        for (axiom, ok) in [("a", rep.axioms.a), ("b", rep.axioms.b), ("c", rep.axioms.c)] {
            checks.push(Check::new(format!("cellular/{l}/{axiom}"), ok, || rep.witnesses.join("; ")));
        }
        checks.push(Check::new(format!("cellular/{l}/ideals"), rep.ideal_filtration, || rep.witnesses.join("; ")));
        checks.push(Check::new(format!("cellular/{l}/idempotent"), rep.idempotent_fixed, || "ι(1_λ) ≠ 1_λ".into()));
        details.push(serde_json::to_value(rep).expect("serializable"));
    }
    let params = json!({ "n": n, "r": r, "lambda": lambda.map(|l| l.entries().to_vec()), "order": CellOrder::MoreDominant });
    Ok(VerificationReport::new("cellular", params, checks, details))
}

fn box_weights(n: usize, window: i64) -> Vec<Weight> {
    let mut out: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|v| (-window..=window).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out.into_iter().map(|v| Weight::new(v).expect("n >= 1")).collect()
}

/// `(e_i f_j − f_j e_i) 1_λ = δ_{ij} λ̃_i 1_λ` with `λ̃_i = λ_i − λ_{i+1}`, over `λ ∈ [−w, w]ⁿ`.
pub fn relations(n: usize, window: i64) -> Result<VerificationReport> {
    if n < 2 {
        return Err(Error::InvalidArgument("relations need n >= 2".into()));
    }
    let results = box_weights(n, window)
        .par_iter()
        .map(|l| -> Result<(Check, usize)> {
            let mut bad = Vec::new();
            let mut literal_mismatch = 0;
            for i in 1..n {
                for j in 1..n {
                    let fj = divided_generators(j, 1, l, GeneratorSide::F)?;
                    let ei = divided_generators(i, 1, fj.left(), GeneratorSide::E)?;
                    let ei2 = divided_generators(i, 1, l, GeneratorSide::E)?;
                    let fj2 = divided_generators(j, 1, ei2.left(), GeneratorSide::F)?;
                    let lhs = udot_multiply(&ei, &fj)?.sub(&udot_multiply(&fj2, &ei2)?)?;
                    let tilde = l.entries()[i - 1] - l.entries()[i];
                    let ok = if i == j {
                        if tilde != l.entries()[i - 1] {
                            literal_mismatch += 1;
                        }
                        lhs == UdotElement::idempotent(l).scale(&q(tilde))
                    } else {
                        lhs.is_zero()
                    };
                    if !ok {
                        bad.push(format!("i={i} j={j}: {}", lhs.to_json()));
                    }
                }
            }
            Ok((Check::new(format!("relations/{l}"), bad.is_empty(), || bad.join("; ")), literal_mismatch))
        })
        .collect::<Result<Vec<_>>>()?;
    let literal: usize = results.iter().map(|(_, k)| k).sum();
    let checks = results.into_iter().map(|(c, _)| c).collect();
    let details = vec![json!({
        "scalar": "lambda_i - lambda_{i+1}",
        "cases_where_plain_lambda_i_differs": literal,
    })];
    Ok(VerificationReport::new("relations", json!({ "n": n, "window": window }), checks, details))
}

/// `psi` onto each `1_λ S_ℤ 1_μ` and multiplicative on composable basis pairs.
pub fn psi_suite(n: usize, r: usize, degree: u32, seed: u64) -> Result<VerificationReport> {
    TensorSpace::new(n, r)?;
    let comps = compositions(n, r);
    let bases: BTreeMap<(Weight, Weight), Vec<UdotElement>> = pairs(n, r)
        .into_par_iter()
        .map(|(l, m)| udot_basis_upto(&l, &m, degree).map(|b| ((l, m), b)))
        .collect::<Result<_>>()?;
    let images: BTreeMap<(Weight, Weight), Vec<SchurElement>> = bases
        .par_iter()
        .map(|(k, b)| b.iter().map(|u| psi(u, r)).collect::<Result<Vec<_>>>().map(|v| (k.clone(), v)))
        .collect::<Result<_>>()?;

    let mut checks: Vec<Check> = images
        .par_iter()
        .map(|((l, m), imgs)| -> Result<Check> {
            let rk = exact_rank(imgs)?;
            let dim = margin_matrices(l, m)?.len();
            let xi = hom_basis(l, m)?;
            let integral = imgs.iter().all(SchurElement::is_integral);
            // images of the patterns off-diag(A), A ∈ λΘμ, are the Zbas-a elements: a ℤ-basis
            let mut zbas = Vec::new();
            let mut agrees = true;
            for a in margin_matrices(l, m)? {
                let img = psi(&UdotElement::basis(l, m, &pattern(a.rows())?)?, r)?;
                agrees &= img == pbw_image(&a, PbwForm::ZbasA)?;
                zbas.push(img);
            }
            let unimodular = unimodular_change(&zbas, &xi)?.unimodular;
            let ok = rk == dim && integral && agrees && unimodular;
            Ok(Check::new(format!("psi/surjective/{l}/{m}"), ok, || {
                format!("rank {rk} of {dim}, integral={integral}, zbas_agrees={agrees}, unimodular={unimodular}")
            }))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut triples: Vec<(&Weight, &Weight, &Weight)> = Vec::new();
    for a in &comps {
        for b in &comps {
            for c in &comps {
                triples.push((a, b, c));
            }
        }
    }
    let mult: Vec<Check> = triples
        .par_iter()
        .map(|&(l, m, nu)| -> Result<Check> {
            let us = &bases[&(l.clone(), m.clone())];
            let vs = &bases[&(m.clone(), nu.clone())];
            let ui = &images[&(l.clone(), m.clone())];
            let vi = &images[&(m.clone(), nu.clone())];
            let mut index_pairs: Vec<(usize, usize)> =
                (0..us.len()).flat_map(|a| (0..vs.len()).map(move |b| (a, b))).collect();
            if n >= 3 {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (l.entries()[0] as u64 * 31 + m.entries()[0] as u64 * 7 + nu.entries()[0] as u64));
                index_pairs.shuffle(&mut rng);
                index_pairs.truncate(6);
            }
            let mut bad = None;
            for (a, b) in index_pairs {
                let lhs = psi(&udot_multiply(&us[a], &vs[b])?, r)?;
                let rhs = ui[a].multiply(&vi[b])?;
                if lhs != rhs {
                    bad = Some(format!("u={} v={}", us[a].to_json(), vs[b].to_json()));
                    break;
                }
            }
            Ok(Check::new(format!("psi/multiplicative/{l}/{m}/{nu}"), bad.is_none(), || bad.unwrap_or_default()))
        })
        .collect::<Result<Vec<_>>>()?;
    checks.extend(mult);
    Ok(VerificationReport::new("psi", json!({ "n": n, "r": r, "degree": degree, "seed": seed }), checks, vec![]))
}

/// Structure of the generic algebra `U̇(λ)`, `n = 2`, and its image in `S(λ)` when `λ ∈ Λ(2, r)`.
pub fn gl2(lambda: Weight, degree: u32) -> Result<VerificationReport> {
    let table = gl2_generic_table(&lambda, degree)?;
    let mut checks = vec![
        Check::new("gl2/unit", table.unit, || "b_0 is not a two-sided unit".into()),
        Check::new("gl2/commutative", table.commutative, || "b_a b_c ≠ b_c b_a".into()),
        Check::new("gl2/generated-by-b1", table.generated_by_b1, || "powers of b_1 do not span".into()),
    ];
    if lambda.is_composition() {
        let r = lambda.degree() as usize;
        let bs: Vec<UdotElement> = (0..=degree).map(|a| gl2_b(&lambda, a)).collect::<Result<_>>()?;
        let imgs: Vec<SchurElement> = bs.iter().map(|b| psi(b, r)).collect::<Result<_>>()?;
        let dim = 1 + lambda.entries()[0].min(lambda.entries()[1]) as usize;
        let rk = exact_rank(&imgs)?;
        checks.push(Check::new("gl2/psi-rank", rk == dim.min(degree as usize + 1), || format!("rank {rk}, dim S(λ) = {dim}")));
        let mut ok = true;
        for a in 0..bs.len() {
            for c in 0..bs.len() {
                ok &= psi(&udot_multiply(&bs[a], &bs[c])?, r)? == imgs[a].multiply(&imgs[c])?;
            }
        }
        checks.push(Check::new("gl2/psi-multiplicative", ok, || "psi(b_a b_c) ≠ psi(b_a) psi(b_c)".into()));
    }
    let details = vec![serde_json::to_value(&table).expect("serializable")];
    Ok(VerificationReport::new("gl2", json!({ "lambda": lambda.entries(), "degree": degree }), checks, details))
}

/// `1_ω S(r, r) 1_ω ≅ ℤΣ_r` as multiplication tables, and `U̇(ω) → ℤΣ_r` onto and multiplicative.
pub fn sym_quotient(r: usize) -> Result<VerificationReport> {
    let iso = SymmetricGroupIso::new(r)?;
    let perms = Permutation::all(r);
    let mut bad = Vec::new();
    for p in &perms {
        for s in &perms {
            let lhs = iso.image(p)?.multiply(&iso.image(s)?)?;
            if lhs != iso.image(&p.compose(s))? {
                bad.push(format!("{:?}·{:?}", p.images(), s.images()));
            }
        }
    }
    let mut checks = vec![Check::new("sym/cayley-table", bad.is_empty(), || bad.join("; "))];
    let report = u0_symmetric_group(r)?;
    checks.push(Check::new("sym/u0-rank", report.rank == report.group_order, || {
        format!("rank {} of {}", report.rank, report.group_order)
    }));
    checks.push(Check::new("sym/u0-in-group-algebra", report.images_in_group_algebra && report.integral, || {
        "images leave ℤΣ_r".into()
    }));
    checks.push(Check::new("sym/u0-multiplicative", report.multiplicative, || report.witnesses.join("; ")));
    let details = vec![serde_json::to_value(&report).expect("serializable")];
    Ok(VerificationReport::new("sym-quotient", json!({ "r": r }), checks, details))
}
