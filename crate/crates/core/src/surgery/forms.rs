//! Constant-coefficient differential forms on `(t, s, w)` and their pullbacks.

/// Jacobian `J[i][j] = ∂Fᵢ/∂xⱼ` in the order `(t, s, w)`.
pub type Jacobian = [[f64; 3]; 3];

/// Coefficients of `dt, ds, dw`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct OneForm(pub [f64; 3]);

/// Coefficients of `dt∧ds, dt∧dw, ds∧dw`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct TwoForm(pub [f64; 3]);

/// Coefficient of `dt∧ds∧dw`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ThreeForm(pub f64);

const PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

impl OneForm {
    pub fn pullback(&self, j: &Jacobian) -> OneForm {
        let mut out = [0.0; 3];
        for (col, o) in out.iter_mut().enumerate() {
            *o = (0..3).map(|i| self.0[i] * j[i][col]).sum();
        }
        OneForm(out)
    }

    pub fn wedge(&self, other: &OneForm) -> TwoForm {
        let mut out = [0.0; 3];
        for (k, &(a, b)) in PAIRS.iter().enumerate() {
            out[k] = self.0[a] * other.0[b] - self.0[b] * other.0[a];
        }
        TwoForm(out)
    }

    pub fn wedge2(&self, omega: &TwoForm) -> ThreeForm {
        let [a0, a1, a2] = self.0;
        let [w01, w02, w12] = omega.0;
        ThreeForm(a0 * w12 - a1 * w02 + a2 * w01)
    }

    pub fn add(&self, o: &OneForm) -> OneForm {
        OneForm([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }

    pub fn sub(&self, o: &OneForm) -> OneForm {
        OneForm([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

impl TwoForm {
    pub fn pullback(&self, j: &Jacobian) -> TwoForm {
        let mut out = [0.0; 3];
        for (k, &(a, b)) in PAIRS.iter().enumerate() {
            out[k] = PAIRS
                .iter()
                .enumerate()
                .map(|(m, &(i, l))| self.0[m] * (j[i][a] * j[l][b] - j[l][a] * j[i][b]))
                .sum();
        }
        TwoForm(out)
    }

    pub fn sub(&self, o: &TwoForm) -> TwoForm {
        TwoForm([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

impl ThreeForm {
    pub fn pullback(&self, j: &Jacobian) -> ThreeForm {
        ThreeForm(self.0 * det3(j))
    }
}

pub fn det3(m: &Jacobian) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// `α = dt + w ds` at height `w`.
pub fn contact_form(w: f64) -> OneForm {
    OneForm([1.0, w, 0.0])
}

/// `dα = dw∧ds = −ds∧dw`.
pub fn contact_differential() -> TwoForm {
    TwoForm([0.0, 0.0, -1.0])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn volume_form_is_nonvanishing() {
        for w in [-0.3, 0.0, 0.7] {
            assert_eq!(contact_form(w).wedge2(&contact_differential()), ThreeForm(-1.0));
        }
    }

    #[test]
    fn pullback_commutes_with_wedge() {
        let j = [[1.0, 0.5, -2.0], [0.3, 2.0, 1.0], [0.0, -1.0, 4.0]];
        let a = OneForm([0.2, -1.0, 3.0]);
        let b = OneForm([1.5, 0.4, -0.7]);
        let lhs = a.wedge(&b).pullback(&j);
        let rhs = a.pullback(&j).wedge(&b.pullback(&j));
        assert!(lhs.sub(&rhs).max_abs() < 1e-12);
        let w = a.wedge(&b);
        let c = OneForm([0.9, -0.1, 0.6]);
        let lhs3 = c.wedge2(&w).pullback(&j).0;
        let rhs3 = c.pullback(&j).wedge2(&w.pullback(&j)).0;
        assert!((lhs3 - rhs3).abs() < 1e-12);
    }
}
