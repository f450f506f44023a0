//! Complex scalar fields on matrix groups as immutable expression trees.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::CalculusError;
use crate::groups::GroupDescriptor;
use crate::linalg::{unit_matrix, ComplexMatrix, ONE, ZERO};

/// Which square block of the ambient matrix a trace form reads.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockSelector {
    Full,
    TopLeft,
    TopRight,
    BottomLeft,
    BottomRight,
}

impl BlockSelector {
    /// Row and column offsets of the block inside a `2m x 2m` matrix.
    pub fn offsets(self, m: usize) -> (usize, usize) {
        match self {
            BlockSelector::Full | BlockSelector::TopLeft => (0, 0),
            BlockSelector::TopRight => (0, m),
            BlockSelector::BottomLeft => (m, 0),
            BlockSelector::BottomRight => (m, m),
        }
    }
}

/// One summand `trace(A * block(g)^t) = sum_ij A_ij block(g)_ij`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceTerm {
    pub coefficient: ComplexMatrix,
    pub block: BlockSelector,
}

#[derive(Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Node {
    TraceForm { terms: Vec<TraceTerm> },
    Sum { children: Vec<ScalarField> },
    Product { children: Vec<ScalarField> },
    Scale { factor: Complex64, child: ScalarField },
    Quotient { numerator: ScalarField, denominator: ScalarField },
}

/// A shared handle to an expression tree; cloning is cheap and sub-trees
/// are shared between fields built from common pieces.
#[derive(Clone, PartialEq)]
pub struct ScalarField(Arc<Node>);

impl fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for ScalarField {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ScalarField {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let node = Node::deserialize(deserializer)?;
        ScalarField::from_node(node).map_err(serde::de::Error::custom)
    }
}

impl ScalarField {
    fn from_node(node: Node) -> Result<Self, CalculusError> {
        match &node {
            Node::TraceForm { terms } => {
                if terms.is_empty() {
                    return Err(CalculusError::EmptyTraceForm);
                }
                for t in terms {
                    if !t.coefficient.is_square() {
                        return Err(CalculusError::CoefficientShape {
                            rows: t.coefficient.rows(),
                            cols: t.coefficient.cols(),
                        });
                    }
                }
            }
            Node::Quotient { denominator, .. } if denominator.is_structurally_zero() => {
                return Err(CalculusError::ZeroDenominator);
            }
            _ => {}
        }
        Ok(Self(Arc::new(node)))
    }

    pub fn node(&self) -> &Node {
        &self.0
    }

    /// Identity of the shared node, used to memoise evaluations.
    pub(crate) fn id(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }

    pub fn trace_form(terms: Vec<TraceTerm>) -> Result<Self, CalculusError> {
        Self::from_node(Node::TraceForm { terms })
    }

    /// `trace(A * block(g)^t)`.
    pub fn linear(block: BlockSelector, coefficient: ComplexMatrix) -> Result<Self, CalculusError> {
        Self::trace_form(vec![TraceTerm { coefficient, block }])
    }

    pub fn constant(c: Complex64) -> Self {
        Self(Arc::new(Node::Scale { factor: c, child: Self(Arc::new(Node::Product { children: Vec::new() })) }))
    }

    pub fn sum(children: Vec<ScalarField>) -> Self {
        Self(Arc::new(Node::Sum { children }))
    }

    pub fn product(children: Vec<ScalarField>) -> Self {
        Self(Arc::new(Node::Product { children }))
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self(Arc::new(Node::Scale { factor, child: self.clone() }))
    }

    pub fn quotient(numerator: ScalarField, denominator: ScalarField) -> Result<Self, CalculusError> {
        Self::from_node(Node::Quotient { numerator, denominator })
    }

    pub fn plus(&self, other: &ScalarField) -> Self {
        Self::sum(vec![self.clone(), other.clone()])
    }

    pub fn times(&self, other: &ScalarField) -> Self {
        Self::product(vec![self.clone(), other.clone()])
    }

    /// True for trees that vanish by construction (zero coefficients or
    /// zero scale factors); a conservative test, not a zero-set oracle.
    pub fn is_structurally_zero(&self) -> bool {
        match self.node() {
            Node::TraceForm { terms } => terms.iter().all(|t| t.coefficient.max_abs() == 0.0),
            Node::Sum { children } => children.iter().all(ScalarField::is_structurally_zero),
            Node::Product { children } => children.iter().any(ScalarField::is_structurally_zero),
            Node::Scale { factor, child } => *factor == ZERO || child.is_structurally_zero(),
            Node::Quotient { numerator, .. } => numerator.is_structurally_zero(),
        }
    }

    /// Whether the tree is a polynomial in matrix entries (no quotients).
    pub fn is_polynomial(&self) -> bool {
        match self.node() {
            Node::TraceForm { .. } => true,
            Node::Sum { children } | Node::Product { children } => children.iter().all(ScalarField::is_polynomial),
            Node::Scale { child, .. } => child.is_polynomial(),
            Node::Quotient { .. } => false,
        }
    }

    /// Value at a matrix, with quotient denominators guarded by `pole_guard`.
    pub fn eval(&self, g: &ComplexMatrix, pole_guard: f64) -> Result<Complex64, CalculusError> {
        Ok(match self.node() {
            Node::TraceForm { terms } => {
                let mut acc = ZERO;
                for t in terms {
                    acc += trace_term_value(t, g)?;
                }
                acc
            }
            Node::Sum { children } => {
                let mut acc = ZERO;
                for c in children {
                    acc += c.eval(g, pole_guard)?;
                }
                acc
            }
            Node::Product { children } => {
                let mut acc = ONE;
                for c in children {
                    acc *= c.eval(g, pole_guard)?;
                }
                acc
            }
            Node::Scale { factor, child } => factor * child.eval(g, pole_guard)?,
            Node::Quotient { numerator, denominator } => {
                let den = denominator.eval(g, pole_guard)?;
                if den.norm() <= pole_guard {
                    return Err(CalculusError::Pole { value: den.norm(), guard: pole_guard });
                }
                numerator.eval(g, pole_guard)? / den
            }
        })
    }
}

/// Resolves the `(row, col)` offset of a block of `g` for a coefficient of size `m`.
pub(crate) fn block_offset(t: &TraceTerm, g: &ComplexMatrix) -> Result<(usize, usize), CalculusError> {
    let m = t.coefficient.rows();
    let size = g.rows();
    let ok = match t.block {
        BlockSelector::Full => size == m,
        _ => size == 2 * m,
    };
    if !ok {
        return Err(CalculusError::BlockMismatch { block: t.block, coefficient: m, matrix: size });
    }
    Ok(t.block.offsets(m))
}

fn trace_term_value(t: &TraceTerm, g: &ComplexMatrix) -> Result<Complex64, CalculusError> {
    let (r0, c0) = block_offset(t, g)?;
    let m = t.coefficient.rows();
    let mut acc = ZERO;
    for i in 0..m {
        for j in 0..m {
            let a = t.coefficient[(i, j)];
            if a != ZERO {
                acc += a * g[(r0 + i, c0 + j)];
            }
        }
    }
    Ok(acc)
}

/// The coordinate function `g -> block(g)_ij` (1-based indices).
///
/// `Full` addresses the whole matrix; the four corner blocks are only valid
/// on the doubled (`2n x 2n`) families.
pub fn coordinate_field(d: &GroupDescriptor, block: BlockSelector, i: usize, j: usize) -> Result<ScalarField, CalculusError> {
    let size = if block == BlockSelector::Full {
        d.matrix_size()
    } else if d.family.is_doubled() {
        d.block_size()
    } else {
        return Err(CalculusError::InvalidBlock { block, descriptor: d.to_string() });
    };
    ScalarField::linear(block, unit_matrix(size, i, j)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coordinate_values_at_identity() {
        let gl: GroupDescriptor = "gl_r:2".parse().unwrap();
        let x11 = coordinate_field(&gl, BlockSelector::Full, 1, 1).unwrap();
        assert_eq!(x11.eval(&ComplexMatrix::identity(2), 1e-6).unwrap(), ONE);
        let sp: GroupDescriptor = "sp_r:1".parse().unwrap();
        let w11 = coordinate_field(&sp, BlockSelector::TopRight, 1, 1).unwrap();
        assert_eq!(w11.eval(&ComplexMatrix::identity(2), 1e-6).unwrap(), ZERO);
        assert!(coordinate_field(&gl, BlockSelector::TopRight, 1, 1).is_err());
        assert!(coordinate_field(&gl, BlockSelector::Full, 3, 1).is_err());
    }

    #[test]
    fn quotient_rejects_zero_denominator() {
        let z = ScalarField::constant(ZERO);
        assert!(matches!(ScalarField::quotient(ScalarField::constant(ONE), z), Err(CalculusError::ZeroDenominator)));
    }

    #[test]
    fn serde_round_trip() {
        let gl: GroupDescriptor = "gl_r:2".parse().unwrap();
        let a = coordinate_field(&gl, BlockSelector::Full, 1, 2).unwrap();
        let b = coordinate_field(&gl, BlockSelector::Full, 2, 2).unwrap();
        let f = ScalarField::quotient(a.times(&a).scale(Complex64::new(0.0, 2.0)), b.plus(&ScalarField::constant(ONE))).unwrap();
        let json = serde_json::to_string(&f).unwrap();
        let back: ScalarField = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
        let g = ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[3.0, 4.0]]).unwrap();
        assert_eq!(back.eval(&g, 1e-6).unwrap(), Complex64::new(0.0, 8.0 / 5.0));
    }

    #[test]
    fn pole_is_reported() {
        let gl: GroupDescriptor = "gl_r:2".parse().unwrap();
        let x12 = coordinate_field(&gl, BlockSelector::Full, 1, 2).unwrap();
        let f = ScalarField::quotient(ScalarField::constant(ONE), x12).unwrap();
        assert!(matches!(f.eval(&ComplexMatrix::identity(2), 1e-6), Err(CalculusError::Pole { .. })));
    }
}
