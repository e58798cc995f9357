use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use geodiscord::discord::{discord3_with, DiscordResult};
use geodiscord::io::{self, Column, Record, StateFile, SweepSpec};
use geodiscord::matrix::DensityMatrix;
use geodiscord::xstate::{class_residuals, pattern_violation, random_state, random_x_state, FamilyParam};
use geodiscord::{
    classify, closest_classical2, closest_classical3, discord2, hermitian_eigenvalues, monogamy_report,
    oracle_discord_measurement, oracle_discord_sphere, Family, KRoute, SphereGrid, XClass,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::{Command, Emit, FamilyArgs, Method, RandomKind};

pub fn run(command: Command) -> Result<()> {
    match command {
        Command::Validate { path, out } => validate(&path, out.as_deref()),
        Command::Discord { path, method, grid, refine_tol, max_refine_iters, permute, route, out } => {
            let grid = SphereGrid::new(grid.0, grid.1, refine_tol, max_refine_iters)?;
            let route: KRoute = route.parse()?;
            discord(&path, method, &grid, permute.as_deref(), route, out.as_deref())
        }
        Command::Closest { path, out } => closest(&path, &out),
        Command::Monogamy { path, out } => monogamy(&path, out.as_deref()),
        Command::Family { family: name, params, emit, out } => family(&name, params, emit, out.as_deref()),
        Command::Sweep { family, param, from, to, steps, columns, params, out } => {
            let outputs = columns.iter().map(|c| c.parse::<Column>()).collect::<Result<Vec<_>, _>>()?;
            let base = family_param(family.parse()?, params);
            let spec = SweepSpec::new(base, &param, from, to, steps, outputs)?;
            sweep(&spec, out.as_deref())
        }
        Command::Random { kind, seed, out } => random(kind, seed, out.as_deref()),
    }
}

fn load(path: &Path) -> Result<(StateFile, DensityMatrix)> {
    let file = io::load_state_file(path).with_context(|| format!("reading {}", path.display()))?;
    let rho = file.to_state().with_context(|| format!("invalid state in {}", path.display()))?;
    Ok((file, rho))
}

/// Prints `record` aligned and, if asked, writes it as key=value lines.
fn emit(record: &Record, out: Option<&Path>) -> Result<()> {
    print!("{}", record.to_aligned());
    if let Some(path) = out {
        fs::write(path, record.to_kv()).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn write_or_print(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn validate(path: &Path, out: Option<&Path>) -> Result<()> {
    let (file, rho) = load(path)?;
    let m = rho.matrix();
    let class = classify(&rho)?;
    let mut rec = Record::new();
    if let Some(label) = &file.label {
        rec.push("label", label);
    }
    rec.push("dim", rho.dim())
        .push("class", class)
        .num("hermiticity_residual", m.hermiticity_residual())
        .num("trace_residual", (m.trace().re - 1.0).abs())
        .num("min_eigenvalue", hermitian_eigenvalues(m)?[0]);
    let (r1, r2) = class_residuals(&rho)?;
    if rho.dim() == 8 {
        rec.num("commutator_class1", r1)
            .num("commutator_class2", r2)
            .num("support_violation_class1", pattern_violation(&rho, XClass::Class1)?)
            .num("support_violation_class2", pattern_violation(&rho, XClass::Class2)?);
    } else if rho.dim() == 4 {
        rec.num("commutator_x", r1).num("support_violation_x", pattern_violation(&rho, XClass::TwoQubitX)?);
    }
    emit(&rec, out)
}

fn push_discord(rec: &mut Record, d: &DiscordResult) {
    rec.push("method", d.method)
        .num("discord", d.value)
        .num("k1", d.k1)
        .num("k2", d.k2)
        .num("k3", d.k3)
        .push("branch", d.branch)
        .vec3("e_max", &d.e_max);
}

fn discord(
    path: &Path,
    method: Method,
    grid: &SphereGrid,
    permute: Option<&[usize]>,
    route: KRoute,
    out: Option<&Path>,
) -> Result<()> {
    let (_, mut rho) = load(path)?;
    if let Some(perm) = permute {
        rho = rho.permute_qubits(perm)?;
    }
    let d = match rho.dim() {
        4 => discord2(&rho)?,
        _ => discord3_with(&rho, route)?,
    };
    let mut rec = Record::new();
    rec.push("dim", rho.dim()).push("class", classify(&rho)?);
    push_discord(&mut rec, &d);
    if method == Method::Oracle {
        let s = oracle_discord_sphere(&rho, grid)?;
        let m = oracle_discord_measurement(&rho, grid)?;
        rec.num("oracle_sphere", s.value)
            .num("oracle_measurement", m.value)
            .num("oracle_agreement", (s.value - m.value).abs())
            .num("analytic_gap", (d.value - s.value).abs().max((d.value - m.value).abs()))
            .vec3("oracle_e", &s.e)
            .push("chi_psd_ok", s.chi_psd_ok && m.chi_psd_ok);
    }
    emit(&rec, out)
}

fn closest(path: &Path, out: &Path) -> Result<()> {
    let (_, rho) = load(path)?;
    let (chi, value) = match rho.dim() {
        4 => (closest_classical2(&rho)?, discord2(&rho)?.value),
        _ => (closest_classical3(&rho)?, geodiscord::discord3(&rho)?.value),
    };
    let file = StateFile::from_matrix(&chi.chi, Some("closest classical state".into()));
    fs::write(out, file.to_json()).with_context(|| format!("writing {}", out.display()))?;
    let mut rec = Record::new();
    rec.push("branch", chi.branch)
        .push("psd_ok", chi.psd_ok)
        .num("distance", chi.distance_sq)
        .num("discord", value)
        .push("state", out.display());
    emit(&rec, None)
}

fn monogamy(path: &Path, out: Option<&Path>) -> Result<()> {
    let (_, rho) = load(path)?;
    let r = monogamy_report(&rho)?;
    let mut rec = Record::new();
    rec.push("class", r.class)
        .num("d_1_23", r.d_1_23)
        .num("d_12", r.d_12)
        .num("d_13", r.d_13)
        .num("residual", r.residual)
        .push("monogamous", r.monogamous);
    emit(&rec, out)
}

fn family_param(family: Family, a: FamilyArgs) -> FamilyParam {
    match family {
        Family::Ghz => FamilyParam::Ghz { p: a.p },
        Family::W => FamilyParam::W { p: a.p },
        Family::Bell => FamilyParam::Bell { c1: a.c1, c2: a.c2, c3: a.c3 },
    }
}

fn family_label(param: &FamilyParam) -> String {
    match *param {
        FamilyParam::Ghz { p } => format!("ghz p={p}"),
        FamilyParam::W { p } => format!("w p={p}"),
        FamilyParam::Bell { c1, c2, c3 } => format!("bell c1={c1} c2={c2} c3={c3}"),
    }
}

fn family(name: &str, args: FamilyArgs, what: Emit, out: Option<&Path>) -> Result<()> {
    let param = family_param(name.parse()?, args);
    let rho = param.state()?;
    match what {
        Emit::State => write_or_print(&StateFile::from_state(&rho, Some(family_label(&param))).to_json(), out),
        Emit::Discord => {
            let d = geodiscord::discord3(&rho)?;
            let mut rec = Record::new();
            rec.push("family", family_label(&param)).push("class", classify(&rho)?);
            push_discord(&mut rec, &d);
            emit(&rec, out)
        }
    }
}

fn sweep(spec: &SweepSpec, out: Option<&Path>) -> Result<()> {
    let table = io::run_sweep(spec)?;
    write_or_print(&io::table_to_csv(&table), out)
}

fn random(kind: RandomKind, seed: u64, out: Option<&Path>) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (rho, label) = match kind {
        RandomKind::Class1 => (random_x_state(XClass::Class1, &mut rng)?, "random class1"),
        RandomKind::Class2 => (random_x_state(XClass::Class2, &mut rng)?, "random class2"),
        RandomKind::Twoqubit => (random_x_state(XClass::TwoQubitX, &mut rng)?, "random two-qubit X"),
        RandomKind::Generic => (random_state(8, &mut rng)?, "random three-qubit"),
    };
    write_or_print(&StateFile::from_state(&rho, Some(format!("{label} seed={seed}"))).to_json(), out)
}
