//! Weight functions of the class `W_n`.
//!
//! A member of `W_n` is fixed by its values on the fundamental interval
//! `[x_n, 1]`. We store it through the angle generator
//! `g(θ) = ρ(cos θ) · sin θ` on `[0, π/2^n]`; in the angle variable every
//! fold map is a reflection, so the density elsewhere is obtained by folding
//! the angle back into `[0, π/2^n]`.

mod table;

use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::Arc;

pub use table::{GeneratorTable, MonotoneCubic};

use crate::dyadic::{dyadic_angle, fold_angle, DyadicLevel};
use crate::error::{Error, Result};
use crate::oracle::adaptive;

/// Default oracle tolerance used to fix the normalisation.
pub const NORMALIZATION_TOL: f64 = 1e-11;

/// Sample count for the nonnegativity scan of a generator.
const NONNEG_SAMPLES: usize = 2001;

/// Grid size per functional equation in [`BlackBoxWeight::membership_residual`].
pub const MEMBERSHIP_GRID: usize = 400;

/// Margin kept away from `y = 1`, where the fold derivatives blow up.
pub const MEMBERSHIP_MARGIN: f64 = 1e-6;

/// Residual at or below which a density is accepted as a `W_n` member.
pub const MEMBERSHIP_TOL: f64 = 1e-9;

/// Slack on the coverage of `[0, π/2^n]` by a generator table.
const TABLE_COVER_TOL: f64 = 1e-9;

/// The names of the built-in families.
pub const BUILTIN_FAMILIES: [(&str, &str); 4] = [
    (
        "chebyshev",
        "rho(x) = 1/(pi sqrt(1-x^2)); constant angle generator",
    ),
    ("half", "rho(x) = 1/2; member of W_1 only"),
    (
        "angle-poly:c0,c1,...",
        "generator c0 + c1*theta + ... on [0, pi/2^n]",
    ),
    (
        "angle-bump:center,width",
        "smooth bump exp(-1/(1-u^2)), center and half-width in units of pi/2^n",
    ),
];

/// Angle generator on the fundamental interval, before normalisation.
#[derive(Debug, Clone, PartialEq)]
pub enum Generator {
    Constant,
    /// `sin θ`: the constant density `1/2` on `W_1`.
    Sine,
    /// `Σ c_i θ^i`.
    AnglePoly(Vec<f64>),
    /// `exp(-1 / (1 - u²))`, `u = (θ - center) / width`, in radians.
    AngleBump {
        center: f64,
        width: f64,
    },
    Table(MonotoneCubic),
}

impl Generator {
    pub fn eval(&self, theta: f64) -> f64 {
        match self {
            Generator::Constant => 1.0,
            Generator::Sine => theta.sin(),
            Generator::AnglePoly(c) => c.iter().rev().fold(0.0, |acc, ci| acc * theta + ci),
            Generator::AngleBump { center, width } => {
                let u = (theta - center) / width;
                if u.abs() >= 1.0 {
                    0.0
                } else {
                    (-1.0 / (1.0 - u * u)).exp()
                }
            }
            Generator::Table(t) => t.eval(theta),
        }
    }

    /// Interior points of `[0, h]` where the generator is not smooth.
    fn seams(&self, h: f64) -> Vec<f64> {
        let mut out = match self {
            Generator::AngleBump { center, width } => vec![center - width, center + width],
            Generator::Table(t) => t.knots().to_vec(),
            _ => Vec::new(),
        };
        out.retain(|&s| s > 0.0 && s < h);
        out
    }
}

/// A normalised member of `W_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightSpec {
    n: usize,
    generator: Generator,
    norm_constant: f64,
    label: String,
}

impl WeightSpec {
    /// Checks the generator for nonnegativity and scales it so that the
    /// fundamental interval carries mass `2^{-n}`.
    pub fn new(n: usize, generator: Generator, label: impl Into<String>) -> Result<Self> {
        let level = DyadicLevel::new(n)?;
        let h = dyadic_angle(level.n());
        if let Generator::Table(t) = &generator {
            if t.first() > TABLE_COVER_TOL || t.last() < h - TABLE_COVER_TOL {
                return Err(Error::Weight(format!(
                    "table covers [{}, {}] but must cover [0, {h}]",
                    t.first(),
                    t.last()
                )));
            }
        }
        for i in 0..NONNEG_SAMPLES {
            let theta = h * i as f64 / (NONNEG_SAMPLES - 1) as f64;
            let v = generator.eval(theta);
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::Weight(format!(
                    "generator is negative or not finite at theta = {theta}: {v}"
                )));
            }
        }
        let mut edges = vec![0.0];
        edges.extend(generator.seams(h));
        edges.push(h);
        let raw = adaptive::integrate(|t| generator.eval(t), &edges, NORMALIZATION_TOL)?;
        if !(raw.value > 0.0) {
            return Err(Error::Weight(
                "generator has zero mass on the fundamental interval".into(),
            ));
        }
        let target = 1.0 / (1u64 << n) as f64;
        Ok(Self {
            n,
            generator,
            norm_constant: target / raw.value,
            label: label.into(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn norm_constant(&self) -> f64 {
        self.norm_constant
    }

    pub fn generator(&self) -> &Generator {
        &self.generator
    }

    /// The embedded table for tabulated generators.
    pub fn generator_table(&self) -> Option<GeneratorTable> {
        match &self.generator {
            Generator::Table(t) => Some(t.to_table()),
            _ => None,
        }
    }

    /// Normalised generator on the fundamental interval `[0, π/2^n]`.
    #[inline]
    pub fn fundamental_density(&self, theta: f64) -> f64 {
        self.norm_constant * self.generator.eval(theta)
    }

    /// `w(cos θ) = ρ(cos θ) sin θ` for `θ ∈ [0, π]`.
    #[inline]
    pub fn angle_density(&self, theta: f64) -> f64 {
        self.fundamental_density(fold_angle(self.n, theta))
    }

    /// `ρ(x)` for `-1 < x < 1`.
    pub fn weight_eval(&self, x: f64) -> Result<f64> {
        if !(x > -1.0 && x < 1.0) {
            return Err(Error::Domain(format!("weight is evaluated on (-1, 1), got {x}")));
        }
        let sin_theta = ((1.0 - x) * (1.0 + x)).sqrt();
        Ok(self.angle_density(x.acos()) / sin_theta)
    }

    /// `w(x) = ρ(x) sqrt(1 - x²)`, invariant under every `S_k`, `k < n`.
    pub fn w_eval(&self, x: f64) -> f64 {
        self.angle_density(x.clamp(-1.0, 1.0).acos())
    }

    /// Panel edges on `[0, π]` that keep every fold seam and generator seam
    /// on a panel boundary: the `2^n` images of `[0, π/2^n]` and of the
    /// generator's own seams.
    pub fn panel_edges(&self) -> Vec<f64> {
        let h = dyadic_angle(self.n);
        let seams = self.generator.seams(h);
        let copies = 1usize << self.n;
        let mut edges = Vec::with_capacity(copies * (seams.len() + 1) + 1);
        for j in 0..copies {
            let base = j as f64 * h;
            edges.push(base);
            for &s in &seams {
                // odd copies are mirrored
                edges.push(if j % 2 == 0 { base + s } else { base + h - s });
            }
        }
        edges.push(std::f64::consts::PI);
        edges.sort_by(f64::total_cmp);
        edges.dedup();
        edges
    }

    /// Panel edges of the fundamental angle interval `[0, π/2^n]`.
    pub fn fundamental_edges(&self) -> Vec<f64> {
        let h = dyadic_angle(self.n);
        let mut edges = vec![0.0];
        let mut seams = self.generator.seams(h);
        seams.sort_by(f64::total_cmp);
        edges.extend(seams);
        edges.push(h);
        edges.dedup();
        edges
    }

    /// Oracle estimate of `∫_{x_n}^1 ρ`.
    pub fn tail_mass(&self, oracle_tol: f64) -> Result<f64> {
        let est = adaptive::integrate(
            |t| self.fundamental_density(t),
            &self.fundamental_edges(),
            oracle_tol,
        )?;
        Ok(est.value)
    }

    /// Oracle estimate of `∫_{-1}^1 ρ`.
    pub fn total_mass(&self, oracle_tol: f64) -> Result<f64> {
        let est = adaptive::integrate(|t| self.angle_density(t), &self.panel_edges(), oracle_tol)?;
        Ok(est.value)
    }
}

/// A weight family named by a spec string, not yet bound to a class index.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightFamily {
    Chebyshev,
    Half,
    AnglePoly(Vec<f64>),
    /// Center and half-width in units of the fundamental angle `π/2^n`.
    AngleBump {
        center: f64,
        width: f64,
    },
    Table(PathBuf),
}

impl WeightFamily {
    /// Parses `chebyshev`, `half`, `angle-poly:c0,c1,...`,
    /// `angle-bump:center,width` or `table:<path>`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, tail) = match s.split_once(':') {
            Some((h, t)) => (h, Some(t)),
            None => (s, None),
        };
        match (head, tail) {
            ("chebyshev", None) => Ok(WeightFamily::Chebyshev),
            ("half", None) => Ok(WeightFamily::Half),
            ("angle-poly", Some(t)) => {
                let coeffs = parse_reals(t)?;
                if coeffs.is_empty() {
                    return Err(Error::Weight("angle-poly needs at least one coefficient".into()));
                }
                Ok(WeightFamily::AnglePoly(coeffs))
            }
            ("angle-bump", Some(t)) => match parse_reals(t)?.as_slice() {
                &[center, width] if width > 0.0 && (0.0..=1.0).contains(&center) => {
                    Ok(WeightFamily::AngleBump { center, width })
                }
                _ => Err(Error::Weight(format!(
                    "angle-bump expects `center,width` with center in [0,1] and width > 0, got `{t}`"
                ))),
            },
            ("table", Some(p)) if !p.is_empty() => Ok(WeightFamily::Table(PathBuf::from(p))),
            _ => Err(Error::Weight(format!("unknown weight `{s}`"))),
        }
    }

    /// Builds the normalised member of `W_n`.
    pub fn build(&self, n: usize) -> Result<WeightSpec> {
        let label = self.to_string();
        let h = dyadic_angle(n.min(crate::dyadic::MAX_LEVEL));
        let generator = match self {
            WeightFamily::Chebyshev => Generator::Constant,
            WeightFamily::Half => {
                if n != 1 {
                    return Err(Error::Weight(format!(
                        "half (rho = 1/2) belongs to W_1 only, not W_{n}"
                    )));
                }
                Generator::Sine
            }
            WeightFamily::AnglePoly(c) => Generator::AnglePoly(c.clone()),
            WeightFamily::AngleBump { center, width } => Generator::AngleBump {
                center: center * h,
                width: width * h,
            },
            WeightFamily::Table(path) => {
                let table = GeneratorTable::read_csv(path)?;
                Generator::Table(MonotoneCubic::from_table(&table)?)
            }
        };
        WeightSpec::new(n, generator, label)
    }

    /// Builds a tabulated weight from an already loaded table.
    pub fn build_with_table(&self, n: usize, table: &GeneratorTable) -> Result<WeightSpec> {
        WeightSpec::new(
            n,
            Generator::Table(MonotoneCubic::from_table(table)?),
            self.to_string(),
        )
    }

    /// The density of this family as a black box, for membership checks at
    /// indices the family does not belong to.
    pub fn black_box(&self, n: usize) -> Result<BlackBoxWeight> {
        match self {
            WeightFamily::Half => Ok(BlackBoxWeight::new(|_| 0.5, n)),
            other => Ok(BlackBoxWeight::from_spec(&other.build(n)?)),
        }
    }
}

impl fmt::Display for WeightFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[f64]| v.iter().map(|c| format!("{c}")).collect::<Vec<_>>().join(",");
        match self {
            WeightFamily::Chebyshev => write!(f, "chebyshev"),
            WeightFamily::Half => write!(f, "half"),
            WeightFamily::AnglePoly(c) => write!(f, "angle-poly:{}", join(c)),
            WeightFamily::AngleBump { center, width } => {
                write!(f, "angle-bump:{}", join(&[*center, *width]))
            }
            WeightFamily::Table(p) => write!(f, "table:{}", p.display()),
        }
    }
}

fn parse_reals(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Error::Weight(format!("`{t}` is not a finite real")))
        })
        .collect()
}

/// Builds a built-in weight from its spec string.
pub fn builtin_weight(name: &str, n: usize) -> Result<WeightSpec> {
    WeightFamily::parse(name)?.build(n)
}

/// Reads a tabulated generator from a CSV file and builds the weight.
pub fn table_weight(path: &Path, n: usize) -> Result<WeightSpec> {
    WeightFamily::Table(path.to_path_buf()).build(n)
}

/// A user-supplied density to be tested for membership in `W_n`.
#[derive(Clone)]
pub struct BlackBoxWeight {
    density: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    claimed_n: usize,
}

impl fmt::Debug for BlackBoxWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BlackBoxWeight")
            .field("claimed_n", &self.claimed_n)
            .finish_non_exhaustive()
    }
}

impl BlackBoxWeight {
    pub fn new<F>(density: F, claimed_n: usize) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            density: Arc::new(density),
            claimed_n,
        }
    }

    pub fn from_spec(spec: &WeightSpec) -> Self {
        let spec = spec.clone();
        let n = spec.n();
        Self::new(move |x| spec.weight_eval(x).unwrap_or(f64::NAN), n)
    }

    pub fn claimed_n(&self) -> usize {
        self.claimed_n
    }

    /// Density at `x`, rejecting negative or non-finite values.
    pub fn eval(&self, x: f64) -> Result<f64> {
        let v = (self.density)(x);
        if !v.is_finite() {
            return Err(Error::Density {
                x,
                reason: format!("value {v} is not finite"),
            });
        }
        if v < 0.0 {
            return Err(Error::Density {
                x,
                reason: format!("value {v} is negative"),
            });
        }
        Ok(v)
    }

    /// `|ρ(y) + ρ(S_k(y)) S_k'(y)| / (1 + |ρ(y)|)` at a single point.
    pub fn pointwise_residual(&self, level: &DyadicLevel, k: usize, y: f64) -> Result<f64> {
        let map = level.fold_map(k)?;
        let rho = self.eval(y)?;
        let s = map.eval(y)?;
        let ds = map.derivative(y)?;
        let rho_s = self.eval(s)?;
        Ok((rho + rho_s * ds).abs() / (1.0 + rho.abs()))
    }

    /// Largest normalised residual of the functional equations
    /// `ρ(y) = -ρ(S_k(y)) S_k'(y)`, `k = 0..n-1`, on a grid of
    /// [`MEMBERSHIP_GRID`] points in `(x_{k+1}, 1 - ε)`.
    pub fn membership_residual(&self, level: &DyadicLevel) -> Result<f64> {
        if self.claimed_n != level.n() {
            return Err(Error::Domain(format!(
                "density claims W_{} but level is {}",
                self.claimed_n,
                level.n()
            )));
        }
        let mut worst = 0.0f64;
        for k in 0..level.n() {
            let a = level.breakpoint(k + 1)?;
            let b = 1.0 - MEMBERSHIP_MARGIN;
            for i in 0..MEMBERSHIP_GRID {
                let y = a + (b - a) * (i + 1) as f64 / (MEMBERSHIP_GRID + 1) as f64;
                worst = worst.max(self.pointwise_residual(level, k, y)?);
            }
        }
        Ok(worst)
    }

    /// Oracle estimate of `∫_{x_n}^1 ρ`, computed in the angle variable.
    pub fn tail_mass(&self, oracle_tol: f64) -> Result<f64> {
        let h = dyadic_angle(self.claimed_n);
        let failure = std::cell::RefCell::new(None);
        let est = adaptive::integrate(
            |t: f64| {
                let x = t.cos();
                if x >= 1.0 {
                    return 0.0;
                }
                match self.eval(x) {
                    Ok(v) => v * t.sin(),
                    Err(e) => {
                        failure.borrow_mut().get_or_insert(e);
                        0.0
                    }
                }
            },
            &[0.0, h],
            oracle_tol,
        );
        let est = est?;
        match failure.into_inner() {
            Some(e) => Err(e),
            None => Ok(est.value),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn chebyshev_values() {
        for n in 1..=5 {
            let w = builtin_weight("chebyshev", n).unwrap();
            assert_abs_diff_eq!(w.weight_eval(0.0).unwrap(), 1.0 / PI, epsilon = 1e-14);
        }
        let w3 = builtin_weight("chebyshev", 3).unwrap();
        let direct = 1.0 / (PI * (1.0f64 - 0.81).sqrt());
        assert_abs_diff_eq!(w3.weight_eval(0.9).unwrap(), direct, epsilon = 1e-13);
        assert_abs_diff_eq!(direct, 0.7302529614, epsilon = 1e-9);
    }

    #[test]
    fn constant_generator_unfolds_to_chebyshev() {
        let spec = WeightSpec::new(2, Generator::AnglePoly(vec![1.0 / PI]), "const").unwrap();
        let expect = 1.0 / (PI * 0.75f64.sqrt());
        assert_abs_diff_eq!(spec.weight_eval(-0.5).unwrap(), expect, epsilon = 1e-13);
    }

    #[test]
    fn weight_eval_rejects_endpoints() {
        let w = builtin_weight("chebyshev", 2).unwrap();
        assert!(w.weight_eval(1.0).is_err());
        assert!(w.weight_eval(-1.0).is_err());
        assert!(w.weight_eval(f64::NAN).is_err());
    }

    #[test]
    fn membership_examples() {
        let cheb = BlackBoxWeight::new(|y: f64| 1.0 / (PI * (1.0 - y * y).sqrt()), 4);
        assert!(cheb.membership_residual(&DyadicLevel::new(4).unwrap()).unwrap() <= 1e-10);

        let half1 = BlackBoxWeight::new(|_| 0.5, 1);
        assert!(half1.membership_residual(&DyadicLevel::new(1).unwrap()).unwrap() <= 1e-12);

        let level2 = DyadicLevel::new(2).unwrap();
        let half2 = BlackBoxWeight::new(|_| 0.5, 2);
        // k = 1 equation at y = 0.9: |0.5 - 0.5 * 0.9 / sqrt(0.19)| / 1.5
        let at = half2.pointwise_residual(&level2, 1, 0.9).unwrap();
        let by_hand = (0.5 - 0.5 * 0.9 / 0.19f64.sqrt()).abs() / 1.5;
        assert_abs_diff_eq!(at, by_hand, epsilon = 1e-14);
        assert_abs_diff_eq!(at * 1.5, 0.5323, epsilon = 1e-4);
        assert!(half2.membership_residual(&level2).unwrap() > 0.1);
    }

    #[test]
    fn membership_propagates_density_failure() {
        let bad = BlackBoxWeight::new(|y: f64| if y > 0.9 { -1.0 } else { 1.0 }, 2);
        let err = bad
            .membership_residual(&DyadicLevel::new(2).unwrap())
            .unwrap_err();
        assert!(matches!(err, Error::Density { x, .. } if x > 0.9));
        let mismatch = BlackBoxWeight::new(|_| 1.0, 3);
        assert!(mismatch
            .membership_residual(&DyadicLevel::new(2).unwrap())
            .is_err());
    }

    #[test]
    fn tail_mass_examples() {
        let c2 = builtin_weight("chebyshev", 2).unwrap();
        // arccos(sqrt(2)/2) / pi
        assert_abs_diff_eq!(c2.tail_mass(1e-12).unwrap(), 0.25, epsilon = 1e-12);
        let c3 = builtin_weight("chebyshev", 3).unwrap();
        assert_abs_diff_eq!(c3.tail_mass(1e-12).unwrap(), 0.125, epsilon = 1e-12);
        let bb = BlackBoxWeight::from_spec(&c3);
        assert_abs_diff_eq!(bb.tail_mass(1e-12).unwrap(), 0.125, epsilon = 1e-10);
    }

    #[test]
    fn builtin_examples() {
        let c4 = builtin_weight("chebyshev", 4).unwrap();
        let lvl = DyadicLevel::new(4).unwrap();
        assert!(BlackBoxWeight::from_spec(&c4).membership_residual(&lvl).unwrap() <= 1e-10);

        let half = builtin_weight("half", 1).unwrap();
        assert_abs_diff_eq!(half.total_mass(1e-12).unwrap(), 1.0, epsilon = 1e-11);
        assert_abs_diff_eq!(half.weight_eval(0.3).unwrap(), 0.5, epsilon = 1e-14);

        let poly = builtin_weight("angle-poly:1,1", 3).unwrap();
        let h = PI / 8.0;
        // closed form: the mass of 1 + θ on [0, h] is h + h^2/2
        assert_abs_diff_eq!(poly.norm_constant(), 0.125 / (h + h * h / 2.0), epsilon = 1e-13);
        assert_abs_diff_eq!(poly.tail_mass(1e-12).unwrap(), 0.125, epsilon = 1e-12);
        assert_abs_diff_eq!(
            poly.fundamental_density(0.2) / poly.fundamental_density(0.0),
            1.2,
            epsilon = 1e-14
        );
    }

    #[test]
    fn builtin_errors() {
        assert!(matches!(builtin_weight("ullman", 2), Err(Error::Weight(_))));
        assert!(builtin_weight("half", 2).is_err());
        assert!(builtin_weight("angle-poly:1,-100", 1).is_err());
        assert!(builtin_weight("angle-poly:", 1).is_err());
        assert!(builtin_weight("angle-bump:0.5", 1).is_err());
        assert!(builtin_weight("angle-bump:0.5,0", 1).is_err());
        assert!(builtin_weight("chebyshev", 0).is_err());
    }

    #[test]
    fn spec_strings_round_trip() {
        for s in [
            "chebyshev",
            "half",
            "angle-poly:1,2.5,0.25",
            "angle-bump:0.5,0.3",
            "table:/tmp/x.csv",
        ] {
            assert_eq!(WeightFamily::parse(s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn panel_edges_cover_fold_images() {
        let w = builtin_weight("angle-bump:0.5,0.25", 2).unwrap();
        let edges = w.panel_edges();
        let h = PI / 4.0;
        // 4 copies, each with 2 seam images, plus endpoints
        assert_eq!(edges.len(), 4 * 3 + 1);
        assert_abs_diff_eq!(edges[1], 0.25 * h, epsilon = 1e-15);
        assert_abs_diff_eq!(edges[4], h + 0.25 * h, epsilon = 1e-15);
        assert_eq!(*edges.last().unwrap(), PI);
    }

    #[test]
    fn w_is_fold_invariant() {
        for name in ["chebyshev", "angle-poly:1,3,2", "angle-bump:0.4,0.5"] {
            for n in 1..=5 {
                let spec = builtin_weight(name, n).unwrap();
                let level = DyadicLevel::new(n).unwrap();
                for k in 0..n {
                    let a = level.breakpoint(k + 1).unwrap();
                    for i in 1..100 {
                        let y = a + (1.0 - a) * i as f64 / 100.0;
                        let s = level.fold_map_eval(k, y).unwrap();
                        assert_abs_diff_eq!(spec.w_eval(y), spec.w_eval(s), epsilon = 1e-10);
                    }
                }
            }
        }
    }

    #[test]
    fn table_weight_from_csv() {
        use std::io::Write;
        let h = PI / 4.0;
        let mut file = tempfile::NamedTempFile::new().unwrap();
        writeln!(file, "theta,w").unwrap();
        for i in 0..=8 {
            let t = h * i as f64 / 8.0;
            writeln!(file, "{t:.17},{}", 1.0 + t * t).unwrap();
        }
        let spec = table_weight(file.path(), 2).unwrap();
        assert_abs_diff_eq!(spec.tail_mass(1e-12).unwrap(), 0.25, epsilon = 1e-11);
        assert_abs_diff_eq!(spec.total_mass(1e-12).unwrap(), 1.0, epsilon = 1e-10);
        assert!(spec.generator_table().is_some());

        // a table that stops short of pi/2^n
        let mut short = tempfile::NamedTempFile::new().unwrap();
        writeln!(short, "theta,w\n0,1\n0.5,1").unwrap();
        assert!(table_weight(short.path(), 2).is_err());
    }
}
