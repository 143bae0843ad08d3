//! Alexander polynomials by Fox calculus.

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::matrix::{maximal_minor_gcd, PolyMatrix};
use crate::poly::LaurentPoly;
use crate::presentation::{abelianization, images_gcd, wirtinger, GroupPresentation};

/// Fox Jacobian of `p` pushed through `t`-exponents `images`.
pub fn fox_jacobian(p: &GroupPresentation, images: &[i64]) -> PolyMatrix {
    let n = p.generators.len();
    p.relators
        .iter()
        .map(|r| {
            let mut row = vec![LaurentPoly::zero(); n];
            let mut e = 0i64;
            for &x in r {
                let j = (x.unsigned_abs() - 1) as usize;
                if x > 0 {
                    row[j] = &row[j] + &LaurentPoly::monomial(1, e);
                    e += images[j];
                } else {
                    e -= images[j];
                    row[j] = &row[j] - &LaurentPoly::monomial(1, e);
                }
            }
            row
        })
        .collect()
}

/// Alexander polynomial of a group whose abelianization is infinite cyclic,
/// given the surjection onto `<t>` as one exponent per generator.
pub fn alexander_from_presentation(p: &GroupPresentation, images: &[i64]) -> Result<LaurentPoly> {
    p.validate()?;
    let ab = abelianization(p);
    if !ab.is_infinite_cyclic() {
        return Err(Error::NotInfiniteCyclicH1 {
            free_rank: ab.free_rank,
            torsion: ab.torsion.iter().map(|t| t.to_string()).collect(),
        });
    }
    if images.len() != p.generators.len() {
        return Err(Error::NonUnitAbelianizationImage(format!(
            "{} images for {} generators",
            images.len(),
            p.generators.len()
        )));
    }
    if images_gcd(images) != 1 {
        return Err(Error::NonUnitAbelianizationImage(
            "images do not generate <t>".into(),
        ));
    }
    for (i, r) in p.relators.iter().enumerate() {
        let s: i64 = r
            .iter()
            .map(|&x| x.signum() * images[(x.unsigned_abs() - 1) as usize])
            .sum();
        if s != 0 {
            return Err(Error::NonUnitAbelianizationImage(format!(
                "relator {i} maps to t^{s}"
            )));
        }
    }
    let Some(col) = images.iter().position(|e| e.abs() == 1) else {
        return Err(Error::NonUnitAbelianizationImage(
            "no generator maps to t or t^-1".into(),
        ));
    };
    let jac: PolyMatrix = fox_jacobian(p, images)
        .into_iter()
        .map(|mut row| {
            row.remove(col);
            row
        })
        .collect();
    Ok(maximal_minor_gcd(jac, p.generators.len() - 1))
}

/// Alexander polynomial of a knot diagram via its Wirtinger presentation,
/// with every arc generator sent to `t`.
pub fn alexander_from_diagram(d: &Diagram) -> Result<LaurentPoly> {
    let p = wirtinger(d)?;
    let images = vec![1; p.generators.len()];
    alexander_from_presentation(&p, &images)
}
