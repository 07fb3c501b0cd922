use rand::Rng;

use crate::exactla::{Field, Matrix};
use crate::modules::{
    colon_submodule, composition_series_length, double_dual_map, ext_dim, hom_rs, length,
    matlis_dual, melkersson_criterion, random_module, restrict_scalars, torsion_index,
    ModulePresentation,
};
use crate::rings::{flat_certificate, AlgebraRef, FlatCertificate, RingMap};

use super::compare::compare_power_structures;
use super::transport::{ascend_m1, induced_power_structure, phi_t_map, PowerStructure};
use super::BaseChangeError;

/// One verified identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckRecord {
    pub check: String,
    pub identity: String,
    pub subject: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub rank: Option<usize>,
    pub records: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.passed)
    }

    fn push(&mut self, check: &str, identity: &str, subject: &str, passed: bool, detail: String) {
        self.records.push(CheckRecord {
            check: check.into(),
            identity: identity.into(),
            subject: subject.into(),
            passed,
            detail,
        });
    }
}

#[derive(Debug, Clone)]
pub struct NamedModule<F: Field> {
    pub name: String,
    pub module: ModulePresentation<F>,
}

impl<F: Field> NamedModule<F> {
    pub fn new(name: impl Into<String>, module: ModulePresentation<F>) -> Self {
        NamedModule {
            name: name.into(),
            module,
        }
    }
}

/// The algebra itself, its residue field, the truncation by the square of
/// the maximal ideal, and `randoms` seeded random modules.
pub fn standard_modules<F: Field, G: Rng>(
    algebra: &AlgebraRef<F>,
    ring: &str,
    ideal: &str,
    randoms: usize,
    rng: &mut G,
) -> Vec<NamedModule<F>> {
    let mut out = vec![
        NamedModule::new(ring, ModulePresentation::regular(algebra)),
        NamedModule::new(
            format!("{ring}/{ideal}"),
            ModulePresentation::residue_field(algebra),
        ),
        NamedModule::new(
            format!("{ring}/{ideal}^2"),
            ModulePresentation::cyclic(algebra, &algebra.maximal_ideal_power(2))
                .expect("powers of the maximal ideal are ideals"),
        ),
    ];
    for i in 1..=randoms {
        out.push(NamedModule::new(
            format!("random-{i}"),
            random_module(algebra, rng),
        ));
    }
    out
}

pub fn verify_instance<F: Field>(
    phi: &RingMap<F>,
    r_modules: &[NamedModule<F>],
    s_modules: &[NamedModule<F>],
    depth: usize,
) -> VerificationReport {
    let mut report = VerificationReport {
        rank: None,
        records: Vec::new(),
    };
    let cert = match flat_certificate(phi) {
        Ok(c) => c,
        Err(e) => {
            report.push(
                "flat-certificate",
                "S is free over R of rank ℓ_R(S/m_R S)",
                "φ",
                false,
                e.to_string(),
            );
            return report;
        }
    };
    let (r, s) = (phi.source(), phi.target());
    let t0 = r.nilpotency_index();
    report.rank = Some(cert.rank());
    report.push(
        "flat-certificate",
        "S is free over R of rank ℓ_R(S/m_R S)",
        "φ",
        true,
        format!("m = {}, t0 = {t0}", cert.rank()),
    );

    verify_truncations(&mut report, &cert, t0);
    verify_matlis_hull(&mut report, &cert);

    let s_over_r = restrict_scalars(&ModulePresentation::regular(s), phi)
        .expect("the target is a module over itself");
    let fiber_length = length(
        &ModulePresentation::regular(s)
            .quotient(&phi.extended_maximal_ideal())
            .expect("extended ideals are submodules")
            .0,
    );
    for a in r_modules {
        verify_base_module(&mut report, &cert, a, fiber_length);
        for i in 1..=depth {
            let subject = format!("A = {}, i = {i}", a.name);
            match ext_dim(&s_over_r, &a.module, i, depth) {
                Ok(d) => report.push(
                    "ext-vanishing",
                    "Ext^i_R(S, A) = 0",
                    &subject,
                    d == 0,
                    format!("dim = {d}"),
                ),
                Err(e) => report.push(
                    "ext-vanishing",
                    "Ext^i_R(S, A) = 0",
                    &subject,
                    false,
                    e.to_string(),
                ),
            }
        }
    }
    for b in s_modules {
        verify_top_module(&mut report, &cert, b);
    }
    report
}

fn verify_truncations<F: Field>(
    report: &mut VerificationReport,
    cert: &FlatCertificate<F>,
    t0: usize,
) {
    for t in 1..=t0 {
        let subject = format!("t = {t}");
        match phi_t_map(cert, t) {
            Ok(map) => {
                report.push(
                    "truncation-iso",
                    "φ_t : (R/m^t)^m → S/m^t S is bijective",
                    &subject,
                    true,
                    format!("dim = {}", map.map().matrix().rows()),
                );
                if t == t0 {
                    let same = map.map().matrix() == cert.assembled_matrix();
                    report.push(
                        "truncation-stable",
                        "φ_t0 equals the assembled map R^m → S",
                        &subject,
                        same,
                        String::new(),
                    );
                }
            }
            Err(e) => report.push(
                "truncation-iso",
                "φ_t : (R/m^t)^m → S/m^t S is bijective",
                &subject,
                false,
                e.to_string(),
            ),
        }
    }
}

fn verify_matlis_hull<F: Field>(report: &mut VerificationReport, cert: &FlatCertificate<F>) {
    let phi = cert.map();
    let (r, s) = (phi.source(), phi.target());
    let hull = matlis_dual(&ModulePresentation::regular(s));
    let socle = colon_submodule(&hull, s.maximal_ideal()).expect("maximal ideal is an ideal");
    let socle_length = length(&hull.submodule(&socle).expect("socles are submodules"));
    report.push(
        "matlis-socle",
        "the socle of S^∨ is simple",
        "S^∨",
        socle_length == 1,
        format!("ℓ_S = {socle_length}"),
    );
    let over_r = restrict_scalars(&hull, phi).expect("S^∨ is an S-module");
    let lhs = length(&over_r);
    let rhs = s.dim() / r.residue_dim();
    report.push(
        "matlis-length",
        "ℓ_R(S^∨) = dim_K S / dim_K(R/m)",
        "S^∨",
        lhs == rhs && s.dim() % r.residue_dim() == 0,
        format!("{lhs} vs {rhs}"),
    );
}

fn verify_base_module<F: Field>(
    report: &mut VerificationReport,
    cert: &FlatCertificate<F>,
    a: &NamedModule<F>,
    fiber_length: usize,
) {
    let subject = format!("A = {}", a.name);
    let phi = cert.map();
    let m = &a.module;
    let chain = composition_series_length(m);
    report.push(
        "composition-length",
        "composition series length = dim_K A / dim_K k",
        &subject,
        chain == length(m),
        format!("{chain} vs {}", length(m)),
    );
    verify_double_dual(report, m, &subject);

    let ps = match induced_power_structure(m, cert) {
        Ok(ps) => ps,
        Err(e) => {
            let check = match e {
                BaseChangeError::RelationNotKilled => "relations-killed",
                _ => "induced-module",
            };
            report.push(
                check,
                "(A^m, ∘) is an S-module",
                &subject,
                false,
                e.to_string(),
            );
            return;
        }
    };
    report.push(
        "relations-killed",
        "tensor relations lie in ker h̃",
        &subject,
        true,
        String::new(),
    );
    report.push(
        "induced-module",
        "(A^m, ∘) is an S-module",
        &subject,
        true,
        String::new(),
    );
    let tensor = ps.tensor().module();
    let (lt, la) = (length(tensor), length(m));
    report.push(
        "tensor-length",
        "ℓ_S(A ⊗_R S) = ℓ_R(A)·ℓ_S(S/m_R S)",
        &subject,
        lt == la * fiber_length,
        format!("{lt} vs {la}·{fiber_length}"),
    );
    report.push(
        "tensor-rank",
        "dim_K(A ⊗_R S) = m·dim_K A",
        &subject,
        tensor.dim() == cert.rank() * m.dim(),
        format!("{} vs {}·{}", tensor.dim(), cert.rank(), m.dim()),
    );
    let restricted = length(&ps.tensor().unit_map().target().clone());
    report.push(
        "tensor-restricted-length",
        "ℓ_R(A ⊗_R S) = m·ℓ_R(A)",
        &subject,
        restricted == cert.rank() * la,
        format!("{restricted} vs {}·{la}", cert.rank()),
    );
    report.push(
        "tensor-unit-injective",
        "a ↦ a ⊗ 1 is injective",
        &subject,
        ps.tensor().unit_map().is_injective(),
        String::new(),
    );
    verify_round_trips(report, &ps, &subject);
    let torsion = torsion_index(m, phi.source().maximal_ideal()).is_ok()
        && torsion_index(tensor, phi.target().maximal_ideal()).is_ok()
        && ps.h().is_bijective()
        && ps.h_is_s_linear();
    report.push(
        "torsion-transport",
        "Γ_n(A ⊗_R S) = A ⊗_R S ≅ (Γ_m A)^m",
        &subject,
        torsion,
        String::new(),
    );
    if cert.rank() == 1 {
        verify_ascent(report, cert, m, &ps, &subject);
    }
}

fn verify_round_trips<F: Field>(
    report: &mut VerificationReport,
    ps: &PowerStructure<F>,
    subject: &str,
) {
    let f = ps.base().field().clone();
    let hg = ps.hg() == Matrix::identity(f.clone(), ps.carrier().dim());
    report.push("hg-identity", "h∘g = id on A^m", subject, hg, String::new());
    let gh = ps.gh() == Matrix::identity(f, ps.tensor().module().dim());
    report.push(
        "gh-identity",
        "g∘h = id on A ⊗_R S",
        subject,
        gh,
        String::new(),
    );
    report.push(
        "h-s-linear",
        "h(s·z) = s ∘ h(z)",
        subject,
        ps.h_is_s_linear(),
        String::new(),
    );
    report.push(
        "r-structure-recovery",
        "φ(r) ∘ (a_i) = (r·a_i)",
        subject,
        ps.recovers_base_structure(),
        String::new(),
    );
}

fn verify_ascent<F: Field>(
    report: &mut VerificationReport,
    cert: &FlatCertificate<F>,
    m: &ModulePresentation<F>,
    ps: &PowerStructure<F>,
    subject: &str,
) {
    let passed = match (ascend_m1(m, cert), hom_rs(cert.map(), m)) {
        (Ok(up), Ok(hom)) => {
            &up == ps.carrier()
                && ps.tensor().unit_map().is_bijective()
                && hom.evaluation().is_bijective()
        }
        _ => false,
    };
    report.push(
        "rank-one-ascent",
        "a ↦ a ⊗ 1 and T ↦ T(1) are bijective and the ascent matches ∘",
        subject,
        passed,
        String::new(),
    );
}

fn verify_double_dual<F: Field>(
    report: &mut VerificationReport,
    m: &ModulePresentation<F>,
    subject: &str,
) {
    let ok = double_dual_map(m)
        .map(|d| d.is_bijective())
        .unwrap_or(false)
        && length(&matlis_dual(m)) == length(m);
    report.push(
        "matlis-double-dual",
        "M → M^∨∨ is an equivariant bijection and ℓ(M^∨) = ℓ(M)",
        subject,
        ok,
        String::new(),
    );
}

fn verify_top_module<F: Field>(
    report: &mut VerificationReport,
    cert: &FlatCertificate<F>,
    b: &NamedModule<F>,
) {
    let subject = format!("B = {}", b.name);
    let phi = cert.map();
    let (r, s) = (phi.source(), phi.target());
    let m = &b.module;
    verify_double_dual(report, m, &subject);
    let over_r = match restrict_scalars(m, phi) {
        Ok(x) => x,
        Err(e) => {
            report.push(
                "restriction-length",
                "ℓ_R(B) = ℓ_S(B)·ℓ_R(S/n)",
                &subject,
                false,
                e.to_string(),
            );
            return;
        }
    };
    let residue_ratio = s.residue_dim() / r.residue_dim();
    let (lr, ls) = (length(&over_r), length(m));
    report.push(
        "restriction-length",
        "ℓ_R(B) = ℓ_S(B)·ℓ_R(S/n)",
        &subject,
        lr == ls * residue_ratio && composition_series_length(&over_r) == lr,
        format!("{lr} vs {ls}·{residue_ratio}"),
    );
    report.push(
        "restriction-melkersson",
        "B is m_R-torsion over R with finite-length socle",
        &subject,
        melkersson_criterion(&over_r, r.maximal_ideal()),
        String::new(),
    );
    match compare_power_structures(m, cert) {
        Ok(cmp) => {
            let consistent = match cmp.witness() {
                Some(w) => {
                    let (u, i) = cmp.products(&w.s, &w.b);
                    u != i && cert.rank() > 1
                }
                None => true,
            };
            let detail = if cmp.equal() {
                "equal".to_string()
            } else {
                "unequal".to_string()
            };
            report.push(
                "power-structures",
                "usual and induced structures on B^m coincide when m = 1",
                &subject,
                consistent,
                detail,
            );
        }
        Err(e) => report.push(
            "power-structures",
            "usual and induced structures on B^m coincide when m = 1",
            &subject,
            false,
            e.to_string(),
        ),
    }
}
