use crate::error::{domain, Result};
use crate::quad::{integrate, integrate_gap, QuadOptions};

/// Evenly spaced abscissae `lo, …, hi` (`n` points, `n ≥ 1`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl Grid {
    pub fn new(lo: f64, hi: f64, n: usize) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) {
            return Err(domain("grid limits must be finite"));
        }
        if n > 1 && !(hi > lo) {
            return Err(domain(format!("grid needs lo < hi, got {lo}:{hi}")));
        }
        Ok(Self { lo, hi, n })
    }

    /// Parses `lo:hi:n`.
    pub fn parse(spec: &str) -> Result<Self> {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            return Err(domain(format!("grid must look like lo:hi:n, got {spec:?}")));
        }
        let num = |s: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| domain(format!("bad grid bound {s:?}")))
        };
        let n = parts[2]
            .trim()
            .parse::<usize>()
            .map_err(|_| domain(format!("bad grid size {:?}", parts[2])))?;
        Self::new(num(parts[0])?, num(parts[1])?, n)
    }

    pub fn points(&self) -> Vec<f64> {
        match self.n {
            0 => Vec::new(),
            1 => vec![self.lo],
            n => {
                let step = (self.hi - self.lo) / (n - 1) as f64;
                (0..n)
                    .map(|i| if i == n - 1 { self.hi } else { self.lo + step * i as f64 })
                    .collect()
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableKind {
    Density,
    Cdf,
}

/// Tabulated density or distribution function.
#[derive(Debug, Clone, PartialEq)]
pub struct DistributionTable {
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    pub kind: TableKind,
    /// Integral of the density, or the limit of the CDF, over the whole support.
    pub total_mass: f64,
}

impl DistributionTable {
    pub fn new(grid: Vec<f64>, values: Vec<f64>, kind: TableKind, total_mass: f64) -> Result<Self> {
        if grid.len() != values.len() {
            return Err(domain("grid and values differ in length"));
        }
        if grid.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(domain("grid must be strictly increasing"));
        }
        let tol = 1e-9;
        match kind {
            TableKind::Density => {
                if values.iter().any(|v| *v < 0.0) {
                    return Err(domain("density values must be nonnegative"));
                }
            }
            TableKind::Cdf => {
                if values.iter().any(|v| !(-tol..=1.0 + tol).contains(v)) {
                    return Err(domain("CDF values must lie in [0, 1]"));
                }
                if values.windows(2).any(|w| w[1] < w[0] - tol) {
                    return Err(domain("CDF values must be nondecreasing"));
                }
            }
        }
        if total_mass > 1.0 + 1e-6 {
            return Err(domain(format!("total mass {total_mass} exceeds 1")));
        }
        Ok(Self {
            grid,
            values,
            kind,
            total_mass,
        })
    }

    /// Evaluates `f` on the grid.
    pub fn tabulate<F>(grid: &Grid, kind: TableKind, total_mass: f64, mut f: F) -> Result<Self>
    where
        F: FnMut(f64) -> Result<f64>,
    {
        let xs = grid.points();
        let values = xs.iter().map(|&x| f(x)).collect::<Result<Vec<_>>>()?;
        Self::new(xs, values, kind, total_mass)
    }
}

/// Distribution function of a density on `[0, ∞)` for increasing queries.
///
/// The density may blow up like `θ^{γ−1}` at 0. Each query integrates only
/// from the previous abscissa, so sweeping a sorted sample costs one short
/// quadrature per point.
pub struct IncrementalCdf<F> {
    density: F,
    gamma: f64,
    opts: QuadOptions,
    last_x: f64,
    last_value: f64,
}

impl<F> IncrementalCdf<F>
where
    F: FnMut(f64) -> Result<f64>,
{
    pub fn new(density: F, gamma: f64, opts: QuadOptions) -> Self {
        Self {
            density,
            gamma,
            opts,
            last_x: 0.0,
            last_value: 0.0,
        }
    }

    pub fn eval(&mut self, x: f64) -> Result<f64> {
        if !(x >= 0.0) {
            return Ok(0.0);
        }
        if x < self.last_x {
            self.last_x = 0.0;
            self.last_value = 0.0;
        }
        let piece = if self.last_x == 0.0 {
            integrate_gap(&mut self.density, x, self.gamma, &self.opts)?
        } else {
            integrate(&mut self.density, self.last_x, x, &self.opts)?
        };
        self.last_value += piece.value;
        self.last_x = x;
        Ok(self.last_value)
    }
}
