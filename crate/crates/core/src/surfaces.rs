//! Closed surfaces and the formulas tying their Euler characteristic to
//! matching extendability.

use std::fmt;

use num_integer::{Integer, Roots};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::Rational;

/// `S_g` (orientable, genus `g`) or `N_k` (non-orientable, `k >= 1`
/// crosscaps).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Surface {
    pub orientable: bool,
    pub genus: u32,
}

impl Surface {
    pub fn orientable(genus: u32) -> Surface {
        Surface {
            orientable: true,
            genus,
        }
    }

    pub fn nonorientable(genus: u32) -> Result<Surface> {
        if genus == 0 {
            return Err(Error::InvalidParameter(
                "a non-orientable surface has genus at least 1".into(),
            ));
        }
        Ok(Surface {
            orientable: false,
            genus,
        })
    }

    pub fn sphere() -> Surface {
        Surface::orientable(0)
    }

    /// The orientable surface of characteristic `chi` when `chi` is even,
    /// otherwise the non-orientable one.
    pub fn with_characteristic(chi: i64) -> Result<Surface> {
        if chi > 2 {
            return Err(Error::InvalidParameter(format!(
                "no closed surface has characteristic {chi}"
            )));
        }
        if chi.is_even() {
            Ok(Surface::orientable(((2 - chi) / 2) as u32))
        } else {
            Surface::nonorientable((2 - chi) as u32)
        }
    }

    pub fn is_sphere(&self) -> bool {
        self.orientable && self.genus == 0
    }

    fn check(&self) -> Result<()> {
        if !self.orientable && self.genus == 0 {
            return Err(Error::InvalidParameter(
                "non-orientable surface with genus 0".into(),
            ));
        }
        Ok(())
    }

    /// Parses `S0`, `S_1`, `N2`, `N_3`.
    pub fn parse(text: &str) -> Result<Surface> {
        let t = text.trim();
        let bad = || Error::Parse(format!("surface '{text}' is not of the form S<g> or N<k>"));
        let (head, rest) = t.split_at(t.chars().next().map(char::len_utf8).ok_or_else(bad)?);
        let genus: u32 = rest.trim_start_matches('_').parse().map_err(|_| bad())?;
        match head {
            "S" | "s" => Ok(Surface::orientable(genus)),
            "N" | "n" => Surface::nonorientable(genus),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}_{}",
            if self.orientable { "S" } else { "N" },
            self.genus
        )
    }
}

pub fn euler_characteristic(s: &Surface) -> Result<i64> {
    s.check()?;
    let g = i64::from(s.genus);
    Ok(if s.orientable { 2 - 2 * g } else { 2 - g })
}

/// `floor((a + sqrt(d)) / 4)` for `d >= 0`. With `r = isqrt(d)` the value
/// `a + sqrt(d)` lies in `[a + r, a + r + 1)`, which contains no multiple of 4
/// beyond `a + r`, so the floor is `floor((a + r) / 4)`.
fn floor_sqrt_quarter(a: i64, d: i64) -> i64 {
    debug_assert!(d >= 0);
    Integer::div_floor(&(a + d.sqrt()), &4)
}

/// Least `k` such that no graph embeddable in `s` is k-extendable.
pub fn mu(s: &Surface) -> Result<i64> {
    let chi = euler_characteristic(s)?;
    Ok(if s.is_sphere() {
        3
    } else {
        2 + (4 - 2 * chi).sqrt()
    })
}

/// The closed form `floor((7 + sqrt(49 - 24 chi)) / 4)` read literally for
/// every `chi` outside `{-1, 0}`.
pub fn mu_prime_literal(chi: i64) -> i64 {
    if chi == 0 || chi == -1 {
        4
    } else {
        floor_sqrt_quarter(7, 49 - 24 * chi)
    }
}

/// Least `k` such that no non-bipartite graph embeddable in `s` is
/// k-extendable. The sphere takes the value 3; the closed form alone gives 2
/// there, and a warning is logged for that disagreement.
pub fn mu_prime(s: &Surface) -> Result<i64> {
    let chi = euler_characteristic(s)?;
    let literal = mu_prime_literal(chi);
    let value = match chi {
        2 | 1 => 3,
        0 | -1 => 4,
        _ => literal,
    };
    if value != literal {
        log::warn!("mu'({s}): closed form gives {literal}, sphere value is {value}");
    }
    Ok(value)
}

/// Least `k` with no `(n, k)`-graph embeddable in `s`, for `n >= 1`.
pub fn mu_nk(n: i64, s: &Surface) -> Result<i64> {
    if n < 1 {
        return Err(Error::InvalidParameter(format!(
            "n must be at least 1, got {n}"
        )));
    }
    let chi = euler_characteristic(s)?;
    Ok(if s.is_sphere() {
        0.max(3 - (n + 1) / 2)
    } else {
        0.max(floor_sqrt_quarter(7 - 2 * n, 49 - 24 * chi))
    })
}

fn check_complete_order(n: i64) -> Result<()> {
    if n < 5 {
        return Err(Error::InvalidParameter(format!(
            "genus formulas for K_n need n >= 5, got {n}"
        )));
    }
    Ok(())
}

/// Orientable genus of `K_n`.
pub fn genus_complete(n: i64) -> Result<i64> {
    check_complete_order(n)?;
    Ok(Integer::div_ceil(&((n - 3) * (n - 4)), &12))
}

/// Non-orientable genus of `K_n`; `K_7` is the exception with value 3.
pub fn nonorientable_genus_complete(n: i64) -> Result<i64> {
    check_complete_order(n)?;
    Ok(if n == 7 {
        3
    } else {
        Integer::div_ceil(&((n - 3) * (n - 4)), &6)
    })
}

/// Whether `K_n` embeds in `s`.
pub fn complete_graph_embeddable(n: i64, s: &Surface) -> Result<bool> {
    s.check()?;
    let needed = if s.orientable {
        genus_complete(n)?
    } else {
        nonorientable_genus_complete(n)?
    };
    Ok(needed <= i64::from(s.genus))
}

/// `d/4 - x/12 <= 1 - chi/order` for a control point of degree `d` lying in
/// `x` triangular faces, evaluated in `T`.
pub fn control_bound_holds_in<T: Scalar>(
    degree: i64,
    triangles: i64,
    chi: i64,
    order: i64,
) -> Result<bool> {
    if order < 3 {
        return Err(Error::InvalidParameter(format!(
            "order must be at least 3, got {order}"
        )));
    }
    if triangles < 0 || triangles > degree {
        return Err(Error::InvalidParameter(format!(
            "need 0 <= triangles <= degree, got {triangles} and {degree}"
        )));
    }
    let lhs = T::ratio(degree, 4) - T::ratio(triangles, 12);
    let rhs = T::from_int(1) - T::ratio(chi, order);
    Ok(lhs <= rhs)
}

/// [`control_bound_holds_in`] with exact rationals.
pub fn control_bound_holds(degree: i64, triangles: i64, chi: i64, order: i64) -> Result<bool> {
    control_bound_holds_in::<Rational>(degree, triangles, chi, order)
}

/// Lower bound on the degree of a vertex lying in `x` triangular faces of
/// a k-extendable embedded graph.
pub fn degree_lower_bound(k: i64, triangles: i64) -> Result<i64> {
    if k < 1 || triangles < 0 {
        return Err(Error::InvalidParameter(format!(
            "need k >= 1 and x >= 0, got k={k}, x={triangles}"
        )));
    }
    Ok(if triangles <= 2 * k - 2 {
        k + 1 + (triangles + 1) / 2
    } else {
        2 * k + 1
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(k: u32) -> Surface {
        Surface::nonorientable(k).unwrap()
    }

    #[test]
    fn characteristics() {
        assert_eq!(euler_characteristic(&Surface::sphere()).unwrap(), 2);
        assert_eq!(euler_characteristic(&Surface::orientable(1)).unwrap(), 0);
        assert_eq!(euler_characteristic(&n(2)).unwrap(), 0);
        assert!(euler_characteristic(&Surface {
            orientable: false,
            genus: 0
        })
        .is_err());
        assert_eq!(Surface::with_characteristic(-3).unwrap(), n(5));
        assert_eq!(Surface::parse("S_2").unwrap(), Surface::orientable(2));
        assert_eq!(Surface::parse("N1").unwrap(), n(1));
        assert!(Surface::parse("T1").is_err());
    }

    #[test]
    fn mu_values() {
        assert_eq!(mu(&Surface::sphere()).unwrap(), 3);
        assert_eq!(mu(&Surface::orientable(1)).unwrap(), 4);
        assert_eq!(mu(&n(1)).unwrap(), 3);
        assert_eq!(mu(&n(2)).unwrap(), 4);
    }

    #[test]
    fn mu_prime_values() {
        assert_eq!(mu_prime(&Surface::sphere()).unwrap(), 3);
        assert_eq!(mu_prime_literal(2), 2);
        assert_eq!(mu_prime(&n(1)).unwrap(), 3);
        assert_eq!(mu_prime(&n(2)).unwrap(), 4);
        assert_eq!(mu_prime(&n(3)).unwrap(), 4);
        assert_eq!(mu_prime(&n(4)).unwrap(), 4);
        assert_eq!(mu_prime(&Surface::orientable(2)).unwrap(), 4);
    }

    #[test]
    fn mu_nk_values() {
        assert_eq!(mu_nk(1, &Surface::sphere()).unwrap(), 2);
        assert_eq!(mu_nk(2, &Surface::orientable(1)).unwrap(), 2);
        assert_eq!(mu_nk(6, &Surface::sphere()).unwrap(), 0);
        assert!(mu_nk(0, &Surface::sphere()).is_err());
    }

    #[test]
    fn complete_graph_genera() {
        assert_eq!(genus_complete(7).unwrap(), 1);
        assert_eq!(nonorientable_genus_complete(7).unwrap(), 3);
        assert_eq!(nonorientable_genus_complete(8).unwrap(), 4);
        assert!(genus_complete(4).is_err());
        assert!(complete_graph_embeddable(7, &Surface::orientable(1)).unwrap());
        assert!(!complete_graph_embeddable(7, &n(2)).unwrap());
        assert!(complete_graph_embeddable(8, &Surface::orientable(2)).unwrap());
    }

    #[test]
    fn control_bound_examples() {
        assert!(!control_bound_holds(6, 0, 2, 12).unwrap());
        assert!(control_bound_holds(4, 0, 0, 30).unwrap());
        // d = 2n + 1, n = 4, chi = -2, order = 2n + 4, all faces triangles.
        assert!(!control_bound_holds(9, 9, -2, 12).unwrap());
        assert!(control_bound_holds(3, 4, 2, 3).is_err());
        assert!(control_bound_holds_in::<f64>(4, 0, 0, 30).unwrap());
    }

    #[test]
    fn degree_bounds() {
        assert_eq!(degree_lower_bound(3, 0).unwrap(), 4);
        assert_eq!(degree_lower_bound(3, 4).unwrap(), 6);
        assert_eq!(degree_lower_bound(3, 5).unwrap(), 7);
    }
}
