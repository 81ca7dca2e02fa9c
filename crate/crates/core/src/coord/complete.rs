use super::scalar::ExactScalar;
use super::vector::{inner_product, ExactVector};
use crate::error::CoordError;

/// Extends mutually orthogonal `vectors` to `n` mutually orthogonal vectors
/// by Gram-Schmidt against the standard basis, returning only the new ones.
/// The new vectors are scaled so their first nonzero component is 1.
pub fn complete_hyperedge(vectors: &[ExactVector], n: usize) -> Result<Vec<ExactVector>, CoordError> {
    let Some(first) = vectors.first() else {
        return Err(CoordError::Dependent);
    };
    let ring = first.ring();
    for v in vectors {
        if v.ring() != ring {
            return Err(CoordError::RingMismatch(ring.name(), v.ring().name()));
        }
        if v.len() != n {
            return Err(CoordError::LengthMismatch(n, v.len()));
        }
        if v.is_zero() {
            return Err(CoordError::Dependent);
        }
    }
    if vectors.len() > n {
        return Err(CoordError::Dependent);
    }
    for (i, u) in vectors.iter().enumerate() {
        for (j, v) in vectors.iter().enumerate().skip(i + 1) {
            if !inner_product(u, v)?.is_zero() {
                return Err(CoordError::NotOrthogonal(i, j));
            }
        }
    }

    let mut basis: Vec<(ExactVector, ExactScalar)> = vectors
        .iter()
        .map(|v| Ok((v.clone(), inner_product(v, v)?)))
        .collect::<Result<_, CoordError>>()?;
    let mut out = Vec::new();
    for j in 0..n {
        if basis.len() == n {
            break;
        }
        let mut comps = vec![ExactScalar::zero(ring); n];
        comps[j] = ExactScalar::one(ring);
        let mut w = ExactVector::new(ring, comps);
        for (b, bb) in &basis {
            let c = inner_product(b, &w)?.div(bb).expect("nonzero vectors have nonzero norm");
            w = w.sub(&b.scale(&c));
        }
        if let Some(w) = w.canonical() {
            let ww = inner_product(&w, &w)?;
            basis.push((w.clone(), ww));
            out.push(w);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coord::Ring;

    fn v(xs: &[i64]) -> ExactVector {
        ExactVector::from_ints(Ring::Rational, xs)
    }

    #[test]
    fn coordinate_complement() {
        let out = complete_hyperedge(&[v(&[1, 1, 0, 0]), v(&[1, -1, 0, 0])], 4).unwrap();
        assert_eq!(out, [v(&[0, 0, 1, 0]), v(&[0, 0, 0, 1])]);
    }

    #[test]
    fn full_input_gives_nothing() {
        let basis = [v(&[1, 0]), v(&[0, 1])];
        assert!(complete_hyperedge(&basis, 2).unwrap().is_empty());
    }

    #[test]
    fn errors() {
        assert_eq!(complete_hyperedge(&[v(&[1, 1]), v(&[1, 0])], 2), Err(CoordError::NotOrthogonal(0, 1)));
        assert_eq!(complete_hyperedge(&[v(&[0, 0])], 2), Err(CoordError::Dependent));
        assert_eq!(complete_hyperedge(&[v(&[1, 0])], 3), Err(CoordError::LengthMismatch(3, 2)));
    }
}
