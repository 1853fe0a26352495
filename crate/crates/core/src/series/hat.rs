//! Coordinates `xh = x`, `yh = y (1 - y^2 + y^3)^(1/8)`, `zh = z (1 - 2z)^(1/2)`
//! on `Q[[x, y, z]]`, so that `yh^8 = y^8 - y^10 + y^11` and
//! `zh^2 = z^2 - 2z^3`.

use super::{SeriesError, TruncSeries};
use crate::poly::{parse_poly, Poly, Vars};

pub const HAT_VARS: [&str; 3] = ["xh", "yh", "zh"];

/// The forward coordinate series and their reversions, through degree `trunc`.
#[derive(Clone, Debug)]
pub struct HatCoordinates {
    pub trunc: u32,
    /// `yh` as a series in `y`.
    pub yh_of_y: TruncSeries,
    /// `zh` as a series in `z`.
    pub zh_of_z: TruncSeries,
    /// `y` as a series in `yh`.
    pub y_of_yh: TruncSeries,
    /// `z` as a series in `zh`.
    pub z_of_zh: TruncSeries,
}

fn unit_times_var(var: &str, unit: &str, root: u32, trunc: u32) -> Result<TruncSeries, SeriesError> {
    let v = Vars::new(&[var]);
    let u = TruncSeries::new(&parse_poly(unit, &v).expect("static text"), trunc);
    let r = u.nth_root_unit(root)?;
    r.mul_poly(&Poly::var_at(&v, 0))
}

fn rename(s: &TruncSeries, name: &str) -> TruncSeries {
    let v = Vars::new(&[name]);
    TruncSeries::new(&Poly::from_terms(&v, s.body().terms().map(|(m, c)| (m.clone(), c.clone()))), s.trunc())
}

impl HatCoordinates {
    pub fn new(trunc: u32) -> Result<Self, SeriesError> {
        let yh_of_y = unit_times_var("y", "1 - y^2 + y^3", 8, trunc)?;
        let zh_of_z = unit_times_var("z", "1 - 2*z", 2, trunc)?;
        let y_of_yh = rename(&yh_of_y.reversion()?, "yh");
        let z_of_zh = rename(&zh_of_z.reversion()?, "zh");
        Ok(Self { trunc, yh_of_y, zh_of_z, y_of_yh, z_of_zh })
    }

    pub fn hat_vars() -> Vars {
        Vars::new(&HAT_VARS)
    }

    /// Images of `x, y, z` in `Q[[xh, yh, zh]]`.
    pub fn images(&self) -> Result<Vec<TruncSeries>, SeriesError> {
        let hv = Self::hat_vars();
        Ok(vec![TruncSeries::var_at(&hv, 0, self.trunc), self.y_of_yh.embed(&hv)?, self.z_of_zh.embed(&hv)?])
    }

    /// Rewrites a polynomial in three variables (read as `x, y, z`, by
    /// position) as a series in `xh, yh, zh`.
    pub fn apply(&self, p: &Poly) -> Result<TruncSeries, SeriesError> {
        if p.arity() != 3 {
            return Err(crate::poly::PolyError::PointArity { expected: 3, found: p.arity() }.into());
        }
        TruncSeries::compose_poly(p, &self.images()?)
    }
}

/// `alpha` with `yh^6 - y^6 = -alpha * yh^8`, in `Q[[xh, yh, zh]]` through
/// degree `trunc`.
pub fn hat_alpha(trunc: u32) -> Result<TruncSeries, SeriesError> {
    let hc = HatCoordinates::new(trunc + 8)?;
    let hv = HatCoordinates::hat_vars();
    let y = hc.y_of_yh.embed(&hv)?;
    let yh = TruncSeries::var_at(&hv, 1, trunc + 8);
    let diff = &y.pow(6) - &yh.pow(6);
    diff.div_monomial(&crate::poly::Monomial::from_exps(&[0, 8, 0]))
}
