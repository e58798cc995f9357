//! Browser bindings for the discord engine. Every export returns a flat
//! `Float64Array`; the layouts are documented on each function.

use geodiscord::monogamy::monogamy_report;
use geodiscord::xstate::{random_x_state, FamilyParam};
use geodiscord::{
    bell_type, discord3, oracle_discord_measurement, oracle_discord_sphere, Family, SphereGrid, XClass,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wasm_bindgen::prelude::*;

fn js(e: geodiscord::Error) -> JsError {
    JsError::new(&e.to_string())
}

/// Rows of `[p, d_1_23, d_12, d_13, residual]` for `steps` values of `p`
/// evenly spaced on `[0, 1]`.
pub fn family_curve_rows(family: &str, steps: usize) -> geodiscord::Result<Vec<f64>> {
    let family: Family = family.parse()?;
    if family == Family::Bell {
        return Err(geodiscord::Error::Parameter("the Bell-type family has no single parameter".into()));
    }
    let steps = steps.max(2);
    let mut out = Vec::with_capacity(5 * steps);
    for k in 0..steps {
        let p = k as f64 / (steps - 1) as f64;
        let param = match family {
            Family::Ghz => FamilyParam::Ghz { p },
            _ => FamilyParam::W { p },
        };
        let r = monogamy_report(&param.state()?)?;
        out.extend([p, r.d_1_23, r.d_12, r.d_13, r.residual]);
    }
    Ok(out)
}

#[wasm_bindgen]
pub fn family_curve(family: &str, steps: usize) -> Result<Vec<f64>, JsError> {
    family_curve_rows(family, steps).map_err(js)
}

/// `[discord, k1, k2, k3, e1, e2, e3]` of the Bell-type state with
/// coefficients `c1, c2, c3`.
pub fn bell_point(c1: f64, c2: f64, c3: f64) -> geodiscord::Result<Vec<f64>> {
    let d = discord3(&bell_type(c1, c2, c3)?)?;
    let mut out = vec![d.value, d.k1, d.k2, d.k3];
    out.extend(d.e_max);
    Ok(out)
}

#[wasm_bindgen]
pub fn bell_discord(c1: f64, c2: f64, c3: f64) -> Result<Vec<f64>, JsError> {
    bell_point(c1, c2, c3).map_err(js)
}

/// `[analytic, sphere oracle, measurement oracle]` for a seeded random
/// state of class `class` (`class1` or `class2`).
pub fn oracle_check_values(class: &str, seed: u64, n_theta: usize, n_phi: usize) -> geodiscord::Result<Vec<f64>> {
    let class: XClass = class.parse()?;
    if !matches!(class, XClass::Class1 | XClass::Class2) {
        return Err(geodiscord::Error::Parameter(format!("expected class1 or class2, got {class}")));
    }
    let grid = SphereGrid::new(n_theta, n_phi, 1e-10, 200)?;
    let rho = random_x_state(class, &mut ChaCha8Rng::seed_from_u64(seed))?;
    Ok(vec![
        discord3(&rho)?.value,
        oracle_discord_sphere(&rho, &grid)?.value,
        oracle_discord_measurement(&rho, &grid)?.value,
    ])
}

#[wasm_bindgen]
pub fn oracle_check(class: &str, seed: u64, n_theta: usize, n_phi: usize) -> Result<Vec<f64>, JsError> {
    oracle_check_values(class, seed, n_theta, n_phi).map_err(js)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ghz_curve() {
        let rows = family_curve_rows("ghz", 11).unwrap();
        assert_eq!(rows.len(), 55);
        for row in rows.chunks(5) {
            assert!((row[1] - 0.5 * (1.0 - row[0]).powi(2)).abs() < 1e-12);
            assert_eq!(row[2], 0.0);
        }
        assert!(family_curve_rows("bell", 5).is_err());
    }

    #[test]
    fn bell() {
        let v = bell_point(0.3, 0.2, 0.1).unwrap();
        assert!((v[0] - 0.00625).abs() < 1e-15);
        assert_eq!(&v[4..], &[1.0, -0.0, 0.0]);
        assert!(bell_point(0.9, 0.9, 0.9).is_err());
    }

    #[test]
    fn oracle_agrees() {
        let v = oracle_check_values("class2", 4, 16, 32).unwrap();
        assert!((v[0] - v[1]).abs() < 1e-6 && (v[0] - v[2]).abs() < 1e-6);
        assert!(oracle_check_values("twoqubit", 4, 16, 32).is_err());
    }
}
