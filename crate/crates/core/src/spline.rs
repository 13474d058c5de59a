//! Cubic spline interpolation on a strictly increasing grid, with natural or
//! clamped (prescribed end slope) boundary conditions.

/// `C^2` cubic spline interpolant.
#[derive(Debug, Clone)]
pub struct CubicSpline {
    x: Vec<f64>,
    y: Vec<f64>,
    /// Second derivatives at the knots.
    m: Vec<f64>,
}

impl CubicSpline {
    /// Natural spline: zero second derivative at the two ends.
    pub fn natural(x: &[f64], y: &[f64]) -> Self {
        Self::build(x, y, None)
    }

    /// Clamped spline: prescribed first derivatives at the two ends. Restores
    /// full fourth-order accuracy near the boundary, which the natural end
    /// condition loses whenever the true second derivative is nonzero there.
    pub fn clamped(x: &[f64], y: &[f64], d_lo: f64, d_hi: f64) -> Self {
        Self::build(x, y, Some((d_lo, d_hi)))
    }

    fn build(x: &[f64], y: &[f64], clamp: Option<(f64, f64)>) -> Self {
        assert!(x.len() == y.len() && x.len() >= 3, "need at least 3 knots");
        let n = x.len();
        // Tridiagonal system for the knot second derivatives.
        let mut sub = vec![0.0; n];
        let mut diag = vec![1.0; n];
        let mut sup = vec![0.0; n];
        let mut rhs = vec![0.0; n];
        for i in 1..n - 1 {
            let hl = x[i] - x[i - 1];
            let hr = x[i + 1] - x[i];
            sub[i] = hl / 6.0;
            diag[i] = (hl + hr) / 3.0;
            sup[i] = hr / 6.0;
            rhs[i] = (y[i + 1] - y[i]) / hr - (y[i] - y[i - 1]) / hl;
        }
        if let Some((d_lo, d_hi)) = clamp {
            let h0 = x[1] - x[0];
            diag[0] = h0 / 3.0;
            sup[0] = h0 / 6.0;
            rhs[0] = (y[1] - y[0]) / h0 - d_lo;
            let hn = x[n - 1] - x[n - 2];
            sub[n - 1] = hn / 6.0;
            diag[n - 1] = hn / 3.0;
            rhs[n - 1] = d_hi - (y[n - 1] - y[n - 2]) / hn;
        }
        // Thomas algorithm.
        let mut m = vec![0.0; n];
        let mut c = vec![0.0; n];
        let mut d = vec![0.0; n];
        c[0] = sup[0] / diag[0];
        d[0] = rhs[0] / diag[0];
        for i in 1..n {
            let denom = diag[i] - sub[i] * c[i - 1];
            c[i] = sup[i] / denom;
            d[i] = (rhs[i] - sub[i] * d[i - 1]) / denom;
        }
        m[n - 1] = d[n - 1];
        for i in (0..n - 1).rev() {
            m[i] = d[i] - c[i] * m[i + 1];
        }
        CubicSpline { x: x.to_vec(), y: y.to_vec(), m }
    }

    fn segment(&self, t: f64) -> usize {
        // Binary search for the knot interval containing t; clamps outside.
        match self.x.binary_search_by(|xi| xi.partial_cmp(&t).unwrap()) {
            Ok(i) => i.min(self.x.len() - 2),
            Err(0) => 0,
            Err(i) => (i - 1).min(self.x.len() - 2),
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        let i = self.segment(t);
        let h = self.x[i + 1] - self.x[i];
        let a = (self.x[i + 1] - t) / h;
        let b = (t - self.x[i]) / h;
        a * self.y[i]
            + b * self.y[i + 1]
            + ((a * a * a - a) * self.m[i] + (b * b * b - b) * self.m[i + 1]) * h * h / 6.0
    }
}
