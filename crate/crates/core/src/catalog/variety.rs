use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::exact::{MPoly, MatRat, Rat, Sampler};

/// Points tried by the Jacobian rank check.
pub const RANK_CHECK_POINTS: usize = 10;

/// Affine chart `φ: ℂⁿ → ℂᴺ` of a variety `X ⊂ Pᴺ`, with homogeneous lift
/// `φ̂(x) = [1 : φ(x)]`.
#[derive(Clone, Debug)]
pub struct ParamVariety {
    name: String,
    n: usize,
    chart: Vec<MPoly>,
    /// `derivs[α][i] = ∂φ_i/∂x_α`
    derivs: Vec<Vec<MPoly>>,
    /// `∂²φ_i/∂x_α∂x_β`, built on first use
    second: OnceLock<Vec<Vec<Vec<MPoly>>>>,
    expected_smooth: bool,
    quadric_cut: bool,
}

impl ParamVariety {
    /// Builds a variety from an explicit chart. The chart's generic Jacobian
    /// rank is not checked here; see [`ParamVariety::check_rank`].
    pub fn from_chart(
        name: impl Into<String>,
        n: usize,
        chart: Vec<MPoly>,
        expected_smooth: bool,
        quadric_cut: bool,
    ) -> Result<Self> {
        if chart.len() < n {
            return Err(Error::Invalid(format!(
                "chart has {} coordinates but source dimension {n}",
                chart.len()
            )));
        }
        if let Some(p) = chart.iter().find(|p| p.nvars() != n) {
            return Err(Error::Invalid(format!(
                "chart polynomial in {} variables, expected {n}",
                p.nvars()
            )));
        }
        let derivs = (0..n)
            .map(|a| chart.iter().map(|p| p.partial(a)).collect())
            .collect();
        Ok(ParamVariety {
            name: name.into(),
            n,
            chart,
            derivs,
            second: OnceLock::new(),
            expected_smooth,
            quadric_cut,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Dimension `n` of the variety.
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Dimension `N` of the ambient projective space.
    pub fn ambient_dim(&self) -> usize {
        self.chart.len()
    }

    pub fn codim(&self) -> usize {
        self.chart.len() - self.n
    }

    pub fn chart(&self) -> &[MPoly] {
        &self.chart
    }

    pub fn max_degree(&self) -> usize {
        self.chart.iter().map(MPoly::degree).max().unwrap_or(0)
    }

    pub fn expected_smooth(&self) -> bool {
        self.expected_smooth
    }

    /// Whether the variety is known to be cut out by quadrics.
    pub fn quadric_cut(&self) -> bool {
        self.quadric_cut
    }

    pub fn partials(&self, alpha: usize) -> &[MPoly] {
        &self.derivs[alpha]
    }

    /// Homogeneous lift `(1, φ)` as polynomials.
    pub fn lift_polys(&self) -> Vec<MPoly> {
        std::iter::once(MPoly::one(self.n))
            .chain(self.chart.iter().cloned())
            .collect()
    }

    /// `φ̂(x) = (1, φ(x))`.
    pub fn lift_at(&self, x: &[Rat]) -> Vec<Rat> {
        std::iter::once(Rat::from_integer(1.into()))
            .chain(self.chart.iter().map(|p| p.eval(x)))
            .collect()
    }

    /// `∂_α φ̂(x) = (0, ∂_α φ(x))` for each `α`.
    pub fn lift_partials_at(&self, x: &[Rat]) -> Vec<Vec<Rat>> {
        self.derivs
            .iter()
            .map(|row| {
                std::iter::once(Rat::from_integer(0.into()))
                    .chain(row.iter().map(|p| p.eval(x)))
                    .collect()
            })
            .collect()
    }

    fn second_partials(&self) -> &Vec<Vec<Vec<MPoly>>> {
        self.second.get_or_init(|| {
            (0..self.n)
                .map(|a| {
                    (0..self.n)
                        .map(|b| self.derivs[a].iter().map(|p| p.partial(b)).collect())
                        .collect()
                })
                .collect()
        })
    }

    /// `∂_α∂_β φ̂(x)`, indexed `[α][β]`.
    pub fn lift_second_partials_at(&self, x: &[Rat]) -> Vec<Vec<Vec<Rat>>> {
        let sp = self.second_partials();
        let mut out = vec![vec![Vec::new(); self.n]; self.n];
        for a in 0..self.n {
            for b in a..self.n {
                let v: Vec<Rat> = std::iter::once(Rat::from_integer(0.into()))
                    .chain(sp[a][b].iter().map(|p| p.eval(x)))
                    .collect();
                out[b][a] = v.clone();
                out[a][b] = v;
            }
        }
        out
    }

    /// Rows `φ̂(x), ∂_1φ̂(x), …, ∂_nφ̂(x)`: spans the embedded tangent space.
    pub fn tangent_frame(&self, x: &[Rat]) -> MatRat {
        let mut rows = vec![self.lift_at(x)];
        rows.extend(self.lift_partials_at(x));
        MatRat::from_rows(self.ambient_dim() + 1, rows)
    }

    /// `N × n` Jacobian of the chart.
    pub fn jacobian_at(&self, x: &[Rat]) -> MatRat {
        let vals: Vec<Vec<Rat>> = self
            .derivs
            .iter()
            .map(|row| row.iter().map(|p| p.eval(x)).collect())
            .collect();
        MatRat::from_fn(self.ambient_dim(), self.n, |i, a| vals[a][i].clone())
    }

    pub fn is_general_point(&self, x: &[Rat]) -> bool {
        self.jacobian_at(x).rank() == self.n
    }

    /// Random point where the chart is immersive.
    pub fn random_general_point(&self, s: &mut Sampler) -> Result<Vec<Rat>> {
        for _ in 0..s.retries() * 4 {
            let x = s.vec(self.n);
            if self.is_general_point(&x) {
                return Ok(x);
            }
        }
        Err(Error::GenericityFailure(format!(
            "no general point of {} found",
            self.name
        )))
    }

    /// Generic Jacobian rank of the chart over [`RANK_CHECK_POINTS`] points.
    pub fn generic_jacobian_rank(&self, s: &mut Sampler) -> usize {
        (0..RANK_CHECK_POINTS)
            .map(|_| self.jacobian_at(&s.vec(self.n)).rank())
            .max()
            .unwrap_or(0)
    }

    /// Fails unless the chart has generic rank `n`.
    pub fn check_rank(&self, s: &mut Sampler) -> Result<()> {
        if self.n == 0 || self.generic_jacobian_rank(s) == self.n {
            Ok(())
        } else {
            Err(Error::ImageDimensionDeficient)
        }
    }
}
