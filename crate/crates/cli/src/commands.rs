use std::path::Path;

use artinian::basechange::{
    compare_power_structures, coordinates, induced_power_structure, standard_modules,
    verify_instance, NamedModule,
};
use artinian::exactla::{Field, Matrix, Rationals};
use artinian::modules::{length, restrict_scalars, tensor_up, ModulePresentation};
use artinian::rings::{flat_certificate, AlgebraRef, RingMap};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::catalog;
use crate::instance::{canonical_string, parse_instance, AnyInstance, InputError, InstanceFile};
use crate::oracle::permuted_relation_rank;
use crate::report::{InstanceReport, Report};
use crate::scalar::JsonScalar;

/// Random modules added per algebra on top of the fixed standard ones.
pub const RANDOM_MODULES: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    pub seed: u64,
    pub depth: usize,
}

macro_rules! dispatch {
    ($inst:expr, $f:ident => $body:expr) => {
        match $inst {
            AnyInstance::Rational($f) => $body,
            AnyInstance::Prime($f) => $body,
        }
    };
}

pub fn load(path: &Path) -> Result<AnyInstance, InputError> {
    let bytes = std::fs::read(path).map_err(|e| InputError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_instance(&bytes)
}

/// FNV-1a, used to give every instance its own stream under one seed.
fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3)
    })
}

fn rng_for(seed: u64, id: &str) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ fnv1a(id))
}

fn tuple(v: &Value) -> String {
    match v {
        Value::Array(items) => {
            let parts: Vec<String> = items
                .iter()
                .map(|x| {
                    x.as_str()
                        .map(str::to_string)
                        .unwrap_or_else(|| x.to_string())
                })
                .collect();
            format!("({})", parts.join(", "))
        }
        other => other.to_string(),
    }
}

fn vector_text<F: Field>(f: &F, v: &[F::Elem]) -> Value {
    Value::Array(v.iter().map(|x| json!(f.format(x))).collect())
}

/// Splits a vector of `S^m` into blocks and formats each as an element of `S`.
fn blocks_text<F: Field>(s: &AlgebraRef<F>, v: &[F::Elem]) -> Value {
    Value::Array(
        v.chunks(s.dim())
            .map(|c| json!(s.format_element(c)))
            .collect(),
    )
}

pub fn validate(path: &Path, opts: Options) -> Report {
    let mut report = Report::new("validate", opts.seed, opts.depth);
    let id = path.display().to_string();
    report.instances.push(match load(path) {
        Ok(inst) => {
            let mut r = InstanceReport::new(&id);
            r.data = dispatch!(&inst, f => json!({
                "field": f.field.field_to_json(),
                "algebras": f.algebras.len(),
                "maps": f.maps.len(),
                "modules": f.modules.len(),
                "requests": f.requests.len(),
            }));
            r
        }
        Err(e) => InstanceReport::rejected(&id, e),
    });
    report
}

pub fn analyze(path: &Path, opts: Options) -> Report {
    let mut report = Report::new("analyze", opts.seed, opts.depth);
    let id = path.display().to_string();
    report.instances.push(match load(path) {
        Ok(inst) => dispatch!(&inst, f => analyze_file(&id, f)),
        Err(e) => InstanceReport::rejected(&id, e),
    });
    report
}

fn algebra_data<F: JsonScalar>(a: &AlgebraRef<F>) -> Value {
    json!({
        "dim": a.dim(),
        "residue_dim": a.residue_dim(),
        "t0": a.nilpotency_index(),
        "localness": a.certificate().as_str(),
    })
}

fn analyze_file<F: JsonScalar>(id: &str, file: &InstanceFile<F>) -> InstanceReport {
    let mut r = InstanceReport::new(id);
    let mut algebras = Map::new();
    for (name, e) in &file.algebras {
        algebras.insert(name.clone(), algebra_data(&e.algebra));
    }
    let mut maps = Map::new();
    for (name, e) in &file.maps {
        let phi = &e.map;
        let mut d = json!({
            "from": e.from,
            "to": e.to,
            "t0": phi.source().nilpotency_index(),
            "fiber_dim": phi.target().dim() - phi.extended_maximal_ideal().dim(),
        });
        match flat_certificate(phi) {
            Ok(cert) => {
                let s = phi.target();
                d["m"] = json!(cert.rank());
                d["ε"] = Value::Array(
                    cert.epsilons()
                        .iter()
                        .map(|v| json!(s.format_element(v)))
                        .collect(),
                );
                r.check(
                    "flat-certificate",
                    "S is free over R of rank ℓ_R(S/m_R S)",
                    &format!("map = {name}"),
                    true,
                    format!("m = {}", cert.rank()),
                );
            }
            Err(err) => r.check(
                "flat-certificate",
                "S is free over R of rank ℓ_R(S/m_R S)",
                &format!("map = {name}"),
                false,
                err.to_string(),
            ),
        }
        maps.insert(name.clone(), d);
    }
    r.data = json!({ "algebras": algebras, "maps": maps });
    r
}

pub fn tensor(path: &Path, map: Option<&str>, module: Option<&str>, opts: Options) -> Report {
    let mut report = Report::new("tensor", opts.seed, opts.depth);
    let id = path.display().to_string();
    report.instances.push(match load(path) {
        Ok(inst) => dispatch!(&inst, f => tensor_file(&id, f, map, module)),
        Err(e) => InstanceReport::rejected(&id, e),
    });
    report
}

fn tensor_file<F: JsonScalar>(
    id: &str,
    file: &InstanceFile<F>,
    map: Option<&str>,
    module: Option<&str>,
) -> InstanceReport {
    let entry = match map {
        Some(name) => file.maps.get(name).map(|e| (name, e)),
        None => file.maps.iter().next().map(|(n, e)| (n.as_str(), e)),
    };
    let Some((map_name, entry)) = entry else {
        return InstanceReport::rejected(id, format!("no map {}", map.unwrap_or("in file")));
    };
    let phi = &entry.map;
    let (module_name, a) = match module {
        None => (
            "k".to_string(),
            ModulePresentation::residue_field(phi.source()),
        ),
        Some(name) => match file.modules.get(name) {
            Some(m) if m.algebra == entry.from => (name.to_string(), m.module.clone()),
            Some(_) => {
                return InstanceReport::rejected(
                    id,
                    format!("module {name} is not over {}", entry.from),
                )
            }
            None => return InstanceReport::rejected(id, format!("no module {name}")),
        },
    };
    let mut r = InstanceReport::new(id);
    match tensor_up(&a, phi) {
        Ok(t) => {
            r.check(
                "tensor-unit-injective",
                "a ↦ a ⊗ 1 is injective",
                &format!("A = {module_name}"),
                t.unit_map().is_injective() || flat_certificate(phi).is_err(),
                String::new(),
            );
            r.data = json!({
                "map": map_name,
                "module": module_name,
                "relations_rank": t.relations().dim(),
                "length": length(t.module()),
                "presentation": file.module_json(&entry.to, t.module()),
            });
        }
        Err(e) => r.check(
            "tensor-up",
            "A ⊗_R S is an S-module",
            &format!("A = {module_name}"),
            false,
            e.to_string(),
        ),
    }
    r
}

pub fn thm37(path: &Path, opts: Options) -> Report {
    let mut report = Report::new("thm37", opts.seed, opts.depth);
    let id = path.display().to_string();
    match load(path) {
        Ok(inst) => dispatch!(&inst, f => report.instances.extend(verify_file(&id, f, opts))),
        Err(e) => report.instances.push(InstanceReport::rejected(&id, e)),
    }
    report
}

/// One report per request; a file without requests verifies each map bare.
fn verify_file<F: JsonScalar>(
    id: &str,
    file: &InstanceFile<F>,
    opts: Options,
) -> Vec<InstanceReport> {
    let mut jobs: Vec<(String, String, Vec<String>)> = file
        .requests
        .iter()
        .map(|(n, r)| (n.clone(), r.map.clone(), r.modules.clone()))
        .collect();
    if jobs.is_empty() {
        jobs = file
            .maps
            .keys()
            .map(|m| (m.clone(), m.clone(), Vec::new()))
            .collect();
    }
    jobs.into_iter()
        .map(|(request, map, modules)| {
            let rid = format!("{id}#{request}");
            let mut rng = rng_for(opts.seed, &rid);
            verify_request(&rid, file, &map, &modules, opts.depth, &mut rng)
        })
        .collect()
}

fn verify_request<F: JsonScalar>(
    id: &str,
    file: &InstanceFile<F>,
    map: &str,
    modules: &[String],
    depth: usize,
    rng: &mut ChaCha8Rng,
) -> InstanceReport {
    let entry = &file.maps[map];
    let phi = &entry.map;
    let named = |over: &str| -> Vec<NamedModule<F>> {
        modules
            .iter()
            .filter(|n| file.modules[*n].algebra == over)
            .map(|n| NamedModule::new(n.clone(), file.modules[n].module.clone()))
            .collect()
    };
    let mut r_modules = named(&entry.from);
    r_modules.extend(standard_modules(
        phi.source(),
        &entry.from,
        "m",
        RANDOM_MODULES,
        rng,
    ));
    let mut s_modules = named(&entry.to);
    s_modules.extend(standard_modules(
        phi.target(),
        &entry.to,
        "n",
        RANDOM_MODULES,
        rng,
    ));

    let verification = verify_instance(phi, &r_modules, &s_modules, depth);
    let mut r = InstanceReport::new(id);
    r.checks = verification.records;
    if verification.rank.is_some() {
        for a in &r_modules {
            tensor_oracle(&mut r, phi, a, rng);
        }
    }
    r.data = json!({
        "map": map,
        "m": verification.rank,
        "modules": {
            "R": r_modules.iter().map(|m| m.name.clone()).collect::<Vec<_>>(),
            "S": s_modules.iter().map(|m| m.name.clone()).collect::<Vec<_>>(),
        },
    });
    r
}

fn tensor_oracle<F: Field>(
    r: &mut InstanceReport,
    phi: &RingMap<F>,
    a: &NamedModule<F>,
    rng: &mut ChaCha8Rng,
) {
    let subject = format!("A = {}", a.name);
    let oracle = permuted_relation_rank(&a.module, phi, rng);
    let primary = tensor_up(&a.module, phi).map(|t| t.relations().dim());
    let ambient = a.module.dim() * phi.target().dim();
    let (passed, detail) = match primary {
        Ok(p) => (p == oracle, format!("{p} vs {oracle} of {ambient}")),
        Err(e) => (false, e.to_string()),
    };
    r.check(
        "tensor-oracle",
        "relation rank is independent of enumeration order",
        &subject,
        passed,
        detail,
    );
}

pub fn remark38(opts: Options) -> Report {
    let mut report = Report::new("remark38", opts.seed, opts.depth);
    report.instances.push(remark38_instance());
    report
}

fn remark38_instance() -> InstanceReport {
    let file = catalog::remark38();
    let phi = &file.maps["phi"].map;
    let s = phi.target();
    let q = |v: &[i64]| v.iter().map(|&x| Rationals.from_i64(x)).collect::<Vec<_>>();
    let mut r = InstanceReport::new("remark38");
    let cert = match flat_certificate(phi) {
        Ok(c) => c,
        Err(e) => {
            r.check(
                "flat-certificate",
                "S is free over R of rank ℓ_R(S/m_R S)",
                "φ",
                false,
                e.to_string(),
            );
            return r;
        }
    };
    let (elt, b) = (q(&[1, 3]), q(&[1, 0, 0, 1]));
    let cmp = match compare_power_structures(&ModulePresentation::regular(s), &cert) {
        Ok(c) => c,
        Err(e) => {
            r.check(
                "power-structures",
                "both structures on S^m exist",
                "B = S",
                false,
                e.to_string(),
            );
            return r;
        }
    };
    let (usual, induced) = cmp.products(&elt, &b);
    let sqrt2 = s.basis_element(1);
    let coords_s = coordinates(&cert, &elt);
    let coords_s_sqrt2 = coordinates(&cert, &s.multiply(&elt, &sqrt2));
    let flatten = |c: &[Vec<_>]| c.iter().flatten().cloned().collect::<Vec<_>>();

    let over_r = restrict_scalars(&ModulePresentation::regular(s), phi).expect("S is an S-module");
    let h_value = induced_power_structure(&over_r, &cert).map(|ps| {
        let z = ps.tensor().class_of(s.unit(), &elt);
        ps.h().apply(&z)
    });

    r.check(
        "coordinates",
        "s = Σ r_i(s)·ε_i",
        "s = 1+3√2",
        flatten(&coords_s) == q(&[1, 3]) && flatten(&coords_s_sqrt2) == q(&[6, 1]),
        format!(
            "{} / {}",
            tuple(&vector_text(&Rationals, &flatten(&coords_s))),
            tuple(&vector_text(&Rationals, &flatten(&coords_s_sqrt2)))
        ),
    );
    r.check(
        "usual-product",
        "s·(b_1, b_2) = (s·b_1, s·b_2)",
        "s = 1+3√2, b = (1, √2)",
        usual == q(&[1, 3, 6, 1]),
        tuple(&blocks_text(s, &usual)),
    );
    r.check(
        "induced-product",
        "s ∘ b = h(s·g(b))",
        "s = 1+3√2, b = (1, √2)",
        induced == q(&[1, 6, 3, 1]),
        tuple(&blocks_text(s, &induced)),
    );
    r.check(
        "h-of-simple-tensor",
        "h(a ⊗ s) = (r_i(s)·a)",
        "a = 1, s = 1+3√2",
        h_value
            .as_ref()
            .map(|v| v == &q(&[1, 0, 3, 0]))
            .unwrap_or(false),
        match &h_value {
            Ok(v) => tuple(&blocks_text(s, v)),
            Err(e) => e.to_string(),
        },
    );
    r.check(
        "structures-unequal",
        "the induced and usual structures on S^m differ when m > 1",
        "B = S",
        !cmp.equal() && usual != induced,
        if cmp.equal() {
            "structures equal"
        } else {
            "structures unequal"
        },
    );
    r.data = json!({
        "ε": cert.epsilons().iter().map(|v| s.format_element(v)).collect::<Vec<_>>(),
        "s": s.format_element(&elt),
        "b": blocks_text(s, &b),
        "coordinates": { "s": vector_text(&Rationals, &flatten(&coords_s)), "s·√2": vector_text(&Rationals, &flatten(&coords_s_sqrt2)) },
        "usual": blocks_text(s, &usual),
        "induced": blocks_text(s, &induced),
        "verdict": if cmp.equal() { "structures equal" } else { "structures unequal" },
    });
    r
}

pub fn suite(dir: &Path, opts: Options) -> Report {
    let mut report = Report::new("suite", opts.seed, opts.depth);
    let mut files: Vec<_> = match std::fs::read_dir(dir) {
        Ok(entries) => entries
            .filter_map(Result::ok)
            .map(|e| e.path())
            .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "json"))
            .collect(),
        Err(e) => {
            report
                .instances
                .push(InstanceReport::rejected(dir.display().to_string(), e));
            return report;
        }
    };
    files.sort();
    for path in files {
        let id = path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default();
        let bytes = match std::fs::read(&path) {
            Ok(b) => b,
            Err(e) => {
                report.instances.push(InstanceReport::rejected(&id, e));
                continue;
            }
        };
        match parse_instance(&bytes) {
            Ok(inst) => {
                dispatch!(&inst, f => {
                    report.instances.extend(verify_file(&id, f, opts));
                    report.instances.push(properties(&id, f, &inst, opts));
                });
            }
            Err(e) => report.instances.push(InstanceReport::rejected(&id, e)),
        }
    }
    report
}

fn random_invertible<F: Field>(f: &F, n: usize, rng: &mut ChaCha8Rng) -> Matrix<F> {
    loop {
        let rows = (0..n)
            .map(|_| (0..n).map(|_| f.from_i64(rng.gen_range(-2..=2))).collect())
            .collect();
        let m = Matrix::from_rows(f.clone(), n, rows);
        if m.is_invertible() {
            return m;
        }
    }
}

/// Seeded property checks on one parsed file.
fn properties<F: JsonScalar>(
    id: &str,
    file: &InstanceFile<F>,
    inst: &AnyInstance,
    opts: Options,
) -> InstanceReport {
    let pid = format!("{id}#properties");
    let mut rng = rng_for(opts.seed, &pid);
    let mut r = InstanceReport::new(&pid);

    let text = canonical_string(&inst.to_json());
    let again = parse_instance(text.as_bytes()).map(|i| canonical_string(&i.to_json()));
    r.check(
        "round-trip",
        "parse ∘ emit ∘ parse = parse",
        "file",
        again.as_ref() == Ok(&text),
        String::new(),
    );

    for (name, e) in &file.algebras {
        let m = artinian::modules::random_module(&e.algebra, &mut rng);
        let gen: Vec<F::Elem> = (0..m.dim())
            .map(|_| file.field.from_i64(rng.gen_range(-2..=2)))
            .collect();
        let u = m.submodule_generated(&[gen]);
        let additive = match (m.submodule(&u), m.quotient(&u)) {
            (Ok(sub), Ok((quot, _))) => length(&m) == length(&sub) + length(&quot),
            _ => false,
        };
        r.check(
            "length-additivity",
            "ℓ(M) = ℓ(U) + ℓ(M/U)",
            &format!("algebra = {name}"),
            additive,
            String::new(),
        );
    }

    for (name, e) in &file.maps {
        let Ok(cert) = flat_certificate(&e.map) else {
            continue;
        };
        let s = e.map.target();
        let b = ModulePresentation::regular(s);
        let p = random_invertible(&file.field, b.dim(), &mut rng);
        let conjugated = b.change_basis(&p).expect("invertible");
        let verdicts = (
            compare_power_structures(&b, &cert),
            compare_power_structures(&conjugated, &cert),
        );
        let (passed, detail) = match verdicts {
            (Ok(x), Ok(y)) => (
                x.equal() == y.equal()
                    && x.usual_dims() == y.usual_dims()
                    && x.induced_dims() == y.induced_dims(),
                if x.equal() { "equal" } else { "unequal" }.to_string(),
            ),
            (Err(err), _) | (_, Err(err)) => (false, err.to_string()),
        };
        r.check(
            "comparison-basis-invariance",
            "the comparison verdict is invariant under change of basis of B",
            &format!("map = {name}"),
            passed,
            detail,
        );
    }
    r
}
