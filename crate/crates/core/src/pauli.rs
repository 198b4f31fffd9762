//! Pauli strings, weighted Pauli sums and qubit-wise commuting groups.
//!
//! Text form of a string lists letters for qubit 0..n-1 left to right, so
//! `"ZIZI"` has Z on qubits 0 and 2. Dense matrices use the matching index
//! convention: bit `j` of a basis index is the state of qubit `j`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    pub fn is_identity(self) -> bool {
        self == Pauli::I
    }

    /// Single-letter product `self * other`.
    pub fn mul_letter(self, other: Pauli) -> (Phase, Pauli) {
        use Pauli::*;
        match (self, other) {
            (I, p) | (p, I) => (Phase::One, p),
            (a, b) if a == b => (Phase::One, I),
            (X, Y) => (Phase::I, Z),
            (Y, X) => (Phase::MinusI, Z),
            (Y, Z) => (Phase::I, X),
            (Z, Y) => (Phase::MinusI, X),
            (Z, X) => (Phase::I, Y),
            (X, Z) => (Phase::MinusI, Y),
            _ => unreachable!(),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Pauli> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

/// One of the four exact phases of the Pauli group.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Phase {
    One,
    MinusOne,
    I,
    MinusI,
}

impl Phase {
    fn quarter_turns(self) -> u8 {
        match self {
            Phase::One => 0,
            Phase::I => 1,
            Phase::MinusOne => 2,
            Phase::MinusI => 3,
        }
    }

    fn from_quarter_turns(k: u8) -> Phase {
        match k % 4 {
            0 => Phase::One,
            1 => Phase::I,
            2 => Phase::MinusOne,
            _ => Phase::MinusI,
        }
    }

    pub fn to_complex(self) -> Complex64 {
        match self {
            Phase::One => Complex64::new(1.0, 0.0),
            Phase::MinusOne => Complex64::new(-1.0, 0.0),
            Phase::I => Complex64::new(0.0, 1.0),
            Phase::MinusI => Complex64::new(0.0, -1.0),
        }
    }
}

impl Mul for Phase {
    type Output = Phase;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: Phase) -> Phase {
        Phase::from_quarter_turns(self.quarter_turns() + rhs.quarter_turns())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    letters: Vec<Pauli>,
}

impl PauliString {
    pub fn new(letters: Vec<Pauli>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::InvalidInput("Pauli string must act on at least one qubit".into()));
        }
        Ok(PauliString { letters })
    }

    pub fn identity(width: usize) -> Self {
        assert!(width >= 1, "Pauli string width must be positive");
        PauliString {
            letters: vec![Pauli::I; width],
        }
    }

    /// A string with the given letters placed on the given qubits and I elsewhere.
    pub fn from_sparse(width: usize, ops: &[(usize, Pauli)]) -> Result<Self> {
        let mut s = PauliString::identity(width.max(1));
        for &(q, p) in ops {
            if q >= width {
                return Err(Error::IndexOutOfRange { index: q, limit: width });
            }
            s.letters[q] = p;
        }
        Ok(s)
    }

    pub fn width(&self) -> usize {
        self.letters.len()
    }

    pub fn letters(&self) -> &[Pauli] {
        &self.letters
    }

    pub fn get(&self, qubit: usize) -> Pauli {
        self.letters[qubit]
    }

    pub fn is_identity(&self) -> bool {
        self.letters.iter().all(|p| p.is_identity())
    }

    /// Qubits carrying a non-identity letter.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.letters
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_identity())
            .map(|(q, _)| q)
    }

    fn check_width(&self, other: &PauliString) -> Result<()> {
        if self.width() != other.width() {
            return Err(Error::WidthMismatch {
                left: self.width(),
                right: other.width(),
            });
        }
        Ok(())
    }

    /// Product `self * other` with its accumulated phase.
    pub fn multiply(&self, other: &PauliString) -> Result<(Phase, PauliString)> {
        self.check_width(other)?;
        let mut phase = Phase::One;
        let letters = self
            .letters
            .iter()
            .zip(&other.letters)
            .map(|(&a, &b)| {
                let (ph, p) = a.mul_letter(b);
                phase = phase * ph;
                p
            })
            .collect();
        Ok((phase, PauliString { letters }))
    }

    /// True iff the strings commute as operators.
    pub fn commutes(&self, other: &PauliString) -> Result<bool> {
        self.check_width(other)?;
        let clashes = self
            .letters
            .iter()
            .zip(&other.letters)
            .filter(|(a, b)| !a.is_identity() && !b.is_identity() && a != b)
            .count();
        Ok(clashes % 2 == 0)
    }

    /// True iff on every qubit the letters agree or one of them is I.
    pub fn qubitwise_commutes(&self, other: &PauliString) -> Result<bool> {
        self.check_width(other)?;
        Ok(self
            .letters
            .iter()
            .zip(&other.letters)
            .all(|(a, b)| a.is_identity() || b.is_identity() || a == b))
    }

    /// Pads the string with identities so it occupies block `index` of `n_blocks`
    /// equal-width blocks.
    pub fn embed(&self, index: usize, n_blocks: usize) -> Result<PauliString> {
        if index >= n_blocks {
            return Err(Error::IndexOutOfRange { index, limit: n_blocks });
        }
        let w = self.width();
        let mut letters = vec![Pauli::I; w * n_blocks];
        letters[index * w..(index + 1) * w].copy_from_slice(&self.letters);
        Ok(PauliString { letters })
    }

    /// Action on a computational basis state: `P|b> = phase |b ^ flip>`.
    pub fn apply_to_basis(&self, basis: usize) -> (Complex64, usize) {
        let mut amp = Complex64::new(1.0, 0.0);
        let mut out = basis;
        for (q, p) in self.letters.iter().enumerate() {
            let bit = (basis >> q) & 1;
            match p {
                Pauli::I => {}
                Pauli::X => out ^= 1 << q,
                Pauli::Y => {
                    out ^= 1 << q;
                    amp *= if bit == 0 {
                        Complex64::new(0.0, 1.0)
                    } else {
                        Complex64::new(0.0, -1.0)
                    };
                }
                Pauli::Z => {
                    if bit == 1 {
                        amp = -amp;
                    }
                }
            }
        }
        (amp, out)
    }

    pub fn to_matrix(&self) -> DMatrix<Complex64> {
        let dim = 1usize << self.width();
        let mut m = DMatrix::zeros(dim, dim);
        for col in 0..dim {
            let (amp, row) = self.apply_to_basis(col);
            m[(row, col)] = amp;
        }
        m
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.letters {
            write!(f, "{}", p.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .trim()
            .chars()
            .map(|c| {
                Pauli::from_char(c).ok_or_else(|| Error::Parse(format!("bad Pauli letter {c:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        PauliString::new(letters)
    }
}

/// Real linear combination of equal-width Pauli strings.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliSum {
    width: usize,
    terms: BTreeMap<PauliString, f64>,
}

impl PauliSum {
    pub fn new(width: usize) -> Self {
        assert!(width >= 1, "Pauli sum width must be positive");
        PauliSum {
            width,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms<I>(width: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (PauliString, f64)>,
    {
        let mut sum = PauliSum::new(width);
        for (s, c) in terms {
            sum.add_term(s, c)?;
        }
        Ok(sum)
    }

    /// `c` times the identity on `width` qubits.
    pub fn constant_term(width: usize, c: f64) -> Self {
        let mut sum = PauliSum::new(width);
        sum.terms.insert(PauliString::identity(width), c);
        sum
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `coeff * string`, merging with an existing entry.
    pub fn add_term(&mut self, string: PauliString, coeff: f64) -> Result<()> {
        if string.width() != self.width {
            return Err(Error::WidthMismatch {
                left: self.width,
                right: string.width(),
            });
        }
        *self.terms.entry(string).or_insert(0.0) += coeff;
        Ok(())
    }

    pub fn add(&mut self, other: &PauliSum) -> Result<()> {
        for (s, &c) in &other.terms {
            self.add_term(s.clone(), c)?;
        }
        Ok(())
    }

    /// Drops terms with `|coefficient| <= tol`.
    pub fn simplify(&mut self, tol: f64) {
        self.terms.retain(|_, c| c.abs() > tol);
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PauliString, f64)> {
        self.terms.iter().map(|(s, &c)| (s, c))
    }

    pub fn coefficient(&self, string: &PauliString) -> f64 {
        self.terms.get(string).copied().unwrap_or(0.0)
    }

    /// Coefficient of the all-identity string.
    pub fn constant(&self) -> f64 {
        self.coefficient(&PauliString::identity(self.width))
    }

    pub fn non_identity_terms(&self) -> impl Iterator<Item = (&PauliString, f64)> {
        self.terms().filter(|(s, _)| !s.is_identity())
    }

    /// Copy of this sum acting on block `index` of `n_blocks` blocks.
    pub fn embed(&self, index: usize, n_blocks: usize) -> Result<PauliSum> {
        if index >= n_blocks {
            return Err(Error::IndexOutOfRange { index, limit: n_blocks });
        }
        let mut out = PauliSum::new(self.width * n_blocks);
        for (s, c) in self.terms() {
            out.add_term(s.embed(index, n_blocks)?, c)?;
        }
        Ok(out)
    }

    /// Hamiltonian of `n_blocks` non-interacting copies of this one.
    pub fn replicate(&self, n_blocks: usize) -> Result<PauliSum> {
        if n_blocks == 0 {
            return Err(Error::InvalidInput("need at least one block".into()));
        }
        let mut out = PauliSum::new(self.width * n_blocks);
        for i in 0..n_blocks {
            out.add(&self.embed(i, n_blocks)?)?;
        }
        Ok(out)
    }

    pub fn to_matrix(&self) -> DMatrix<Complex64> {
        let dim = 1usize << self.width;
        let mut m = DMatrix::zeros(dim, dim);
        for (s, c) in self.terms() {
            for col in 0..dim {
                let (amp, row) = s.apply_to_basis(col);
                m[(row, col)] += amp * c;
            }
        }
        m
    }

    /// `<psi|H|psi>` for a state vector in the qubit-j-is-bit-j convention.
    pub fn expectation(&self, state: &[Complex64]) -> Result<f64> {
        if state.len() != 1usize << self.width {
            return Err(Error::InvalidInput(format!(
                "state length {} does not match {} qubits",
                state.len(),
                self.width
            )));
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (s, c) in self.terms() {
            for (b, &amp) in state.iter().enumerate() {
                let (ph, row) = s.apply_to_basis(b);
                acc += state[row].conj() * ph * amp * c;
            }
        }
        Ok(acc.re)
    }

    /// Serializes as `coefficient<TAB>string` lines.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (s, c) in self.terms() {
            out.push_str(&format!("{c:?}\t{s}\n"));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut terms = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (c, s) = line
                .split_once('\t')
                .ok_or_else(|| Error::Parse(format!("line {}: expected coefficient<TAB>string", lineno + 1)))?;
            let c: f64 = c
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("line {}: bad coefficient {c:?}", lineno + 1)))?;
            terms.push((s.parse::<PauliString>()?, c));
        }
        let width = terms
            .first()
            .map(|(s, _)| s.width())
            .ok_or_else(|| Error::Parse("empty Pauli sum".into()))?;
        PauliSum::from_terms(width, terms)
    }
}

/// Greedy first-fit partition into qubit-wise commuting groups, in input order.
pub fn qubitwise_groups(strings: &[PauliString]) -> Result<Vec<Vec<PauliString>>> {
    let mut groups: Vec<Vec<PauliString>> = Vec::new();
    for s in strings {
        let mut placed = false;
        for g in groups.iter_mut() {
            let mut fits = true;
            for m in g.iter() {
                if !m.qubitwise_commutes(s)? {
                    fits = false;
                    break;
                }
            }
            if fits {
                g.push(s.clone());
                placed = true;
                break;
            }
        }
        if !placed {
            groups.push(vec![s.clone()]);
        }
    }
    Ok(groups)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    fn single_matrix(p: Pauli) -> DMatrix<Complex64> {
        let o = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        match p {
            Pauli::I => DMatrix::from_row_slice(2, 2, &[one, o, o, one]),
            Pauli::X => DMatrix::from_row_slice(2, 2, &[o, one, one, o]),
            Pauli::Y => DMatrix::from_row_slice(2, 2, &[o, -i, i, o]),
            Pauli::Z => DMatrix::from_row_slice(2, 2, &[one, o, o, -one]),
        }
    }

    // Kronecker product with qubit 0 as the least significant index bit.
    fn kron_oracle(s: &PauliString) -> DMatrix<Complex64> {
        let mut m = DMatrix::from_element(1, 1, Complex64::new(1.0, 0.0));
        for &p in s.letters() {
            m = single_matrix(p).kronecker(&m);
        }
        m
    }

    fn all_strings(width: usize) -> Vec<PauliString> {
        let mut out = vec![vec![]];
        for _ in 0..width {
            out = out
                .into_iter()
                .flat_map(|v: Vec<Pauli>| {
                    Pauli::ALL.iter().map(move |&p| {
                        let mut w = v.clone();
                        w.push(p);
                        w
                    })
                })
                .collect();
        }
        out.into_iter().map(|l| PauliString::new(l).unwrap()).collect()
    }

    #[test]
    fn x_times_y_is_i_z() {
        let (ph, p) = ps("X").multiply(&ps("Y")).unwrap();
        assert_eq!(ph, Phase::I);
        assert_eq!(p, ps("Z"));
    }

    #[test]
    fn identity_is_neutral() {
        let p = ps("XYZ");
        let (ph, q) = ps("III").multiply(&p).unwrap();
        assert_eq!(ph, Phase::One);
        assert_eq!(q, p);
    }

    #[test]
    fn xz_times_zx_is_yy() {
        let (ph, p) = ps("XZ").multiply(&ps("ZX")).unwrap();
        assert_eq!(p, ps("YY"));
        assert_eq!(ph, Phase::One);
    }

    #[test]
    fn multiply_matches_matrix_oracle_up_to_width_2() {
        for w in 1..=2 {
            let all = all_strings(w);
            for a in &all {
                for b in &all {
                    let (ph, p) = a.multiply(b).unwrap();
                    let lhs = kron_oracle(a) * kron_oracle(b);
                    let rhs = kron_oracle(&p) * ph.to_complex();
                    assert!((lhs - rhs).norm() < 1e-12, "{a} * {b}");
                }
            }
        }
    }

    #[test]
    fn to_matrix_matches_kron_oracle() {
        for s in all_strings(3) {
            assert!((s.to_matrix() - kron_oracle(&s)).norm() < 1e-14, "{s}");
        }
    }

    #[test]
    fn commutation_examples() {
        assert!(ps("ZIZI").commutes(&ps("ZZII")).unwrap());
        assert!(!ps("X").commutes(&ps("Z")).unwrap());
        assert!(ps("XI").commutes(&ps("IZ")).unwrap());
        assert!(ps("XX").commutes(&ps("YY")).unwrap());
        assert!(!ps("XX").qubitwise_commutes(&ps("YY")).unwrap());
    }

    #[test]
    fn commutes_matches_matrix_commutator_up_to_width_3() {
        let all = all_strings(3);
        for a in all.iter().step_by(3) {
            let ma = a.to_matrix();
            for b in &all {
                let mb = b.to_matrix();
                let comm = (&ma * &mb - &mb * &ma).norm();
                assert_eq!(a.commutes(b).unwrap(), comm < 1e-12, "{a} {b}");
            }
        }
    }

    #[test]
    fn width_mismatch_is_an_error() {
        assert!(matches!(
            ps("X").multiply(&ps("XX")),
            Err(Error::WidthMismatch { left: 1, right: 2 })
        ));
        assert!(ps("X").commutes(&ps("XX")).is_err());
    }

    #[test]
    fn embed_pads_with_identity() {
        let h = PauliSum::from_terms(1, [(ps("Z"), 0.25)]).unwrap();
        let e = h.embed(0, 2).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e.coefficient(&ps("ZI")), 0.25);
        assert_eq!(h.embed(1, 2).unwrap().coefficient(&ps("IZ")), 0.25);
        assert!(h.embed(2, 2).is_err());

        let c = PauliSum::constant_term(1, -0.5).embed(2, 3).unwrap();
        assert_eq!(c.width(), 3);
        assert_eq!(c.constant(), -0.5);
    }

    #[test]
    fn grouping_examples() {
        let g = qubitwise_groups(&[ps("ZIZI"), ps("ZZII"), ps("IIZZ")]).unwrap();
        assert_eq!(g.len(), 1);
        let g = qubitwise_groups(&[ps("Z"), ps("X")]).unwrap();
        assert_eq!(g.len(), 2);
    }

    #[test]
    fn text_round_trip() {
        let h = PauliSum::from_terms(2, [(ps("ZI"), 0.1), (ps("XX"), -0.2), (ps("II"), 1.0 / 3.0)]).unwrap();
        let back = PauliSum::from_text(&h.to_text()).unwrap();
        assert_eq!(back, h);
        assert!(PauliSum::from_text("0.1 ZZ").is_err());
        assert!("ZQ".parse::<PauliString>().is_err());
        assert!("".parse::<PauliString>().is_err());
    }

    #[test]
    fn duplicates_merge() {
        let h = PauliSum::from_terms(1, [(ps("Z"), 0.5), (ps("Z"), 0.25)]).unwrap();
        assert_eq!(h.len(), 1);
        assert_eq!(h.coefficient(&ps("Z")), 0.75);
        let mut bad = PauliSum::new(2);
        assert!(bad.add_term(ps("Z"), 1.0).is_err());
    }

    #[test]
    fn expectation_matches_matrix() {
        let h = PauliSum::from_terms(2, [(ps("XY"), 0.3), (ps("ZZ"), -0.7), (ps("IX"), 0.2)]).unwrap();
        let psi: Vec<Complex64> = [0.1, 0.5, -0.3, 0.2]
            .iter()
            .zip([0.2, -0.1, 0.4, 0.0])
            .map(|(&r, i)| Complex64::new(r, i))
            .collect();
        let norm: f64 = psi.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        let psi: Vec<_> = psi.iter().map(|a| a / norm).collect();
        let v = nalgebra::DVector::from_vec(psi.clone());
        let direct = (v.adjoint() * h.to_matrix() * &v)[(0, 0)].re;
        assert!((h.expectation(&psi).unwrap() - direct).abs() < 1e-14);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn string(width: usize) -> impl Strategy<Value = PauliString> {
            proptest::collection::vec(0..4usize, width)
                .prop_map(|v| PauliString::new(v.into_iter().map(|i| Pauli::ALL[i]).collect()).unwrap())
        }

        proptest! {
            #[test]
            fn multiply_is_associative(a in string(3), b in string(3), c in string(3)) {
                let (p1, ab) = a.multiply(&b).unwrap();
                let (p2, ab_c) = ab.multiply(&c).unwrap();
                let (q1, bc) = b.multiply(&c).unwrap();
                let (q2, a_bc) = a.multiply(&bc).unwrap();
                prop_assert_eq!(ab_c, a_bc);
                prop_assert_eq!(p1 * p2, q1 * q2);
            }

            #[test]
            fn groups_are_qubitwise_commuting_partitions(
                strings in proptest::collection::vec(string(4), 1..20)
            ) {
                let groups = qubitwise_groups(&strings).unwrap();
                let total: usize = groups.iter().map(|g| g.len()).sum();
                prop_assert_eq!(total, strings.len());
                for g in &groups {
                    for a in g {
                        for b in g {
                            prop_assert!(a.qubitwise_commutes(b).unwrap());
                            prop_assert!(a.commutes(b).unwrap());
                        }
                    }
                }
            }

            #[test]
            fn identity_commutes_with_everything(a in string(4)) {
                prop_assert!(PauliString::identity(4).commutes(&a).unwrap());
            }
        }
    }
}
