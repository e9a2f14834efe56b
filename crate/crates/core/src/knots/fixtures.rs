//! Test fixtures transcribed from pictured complexes.

use crate::error::{Error, Result};
use crate::involutive::{extract_subcomplex, tensor_iota_k, IotaKComplex, UVElement};
use crate::ring::UVTerm;

use super::cn;

/// The subcomplex `𝒴_n ⊂ 𝒞_n ⊗ 𝒞_n`: a staircase through the products
/// `y_a y_b`, `y_a x_b`, `x_a y_b` plus a square on `x0 x0`.
///
/// Built by spanning the pictured elements inside `𝒞_n ⊗ 𝒞_n` and reading
/// off the differential and the involution, so every entry is computed
/// rather than copied. Pure products keep their tensor names (`y-1|x0`);
/// the symmetric sums of the square are named by joining with `+`.
pub fn yn_fixture(n: u32) -> Result<IotaKComplex> {
    if n < 1 || n.is_multiple_of(2) {
        return Err(Error::invalid(format!("the Y_n fixture needs odd n, got {n}")));
    }
    let c = cn(n)?;
    let x = tensor_iota_k(&c, &c);
    let n = i64::from(n);
    let y = |k: i64| format!("y{k}");
    let xg = |k: i64| format!("x{k}");
    let mut names: Vec<Vec<String>> = Vec::new();
    let mut push = |a: String, b: String| names.push(vec![format!("{a}|{b}")]);

    // Top row, from y_{1-2n} y_{1-2n} to y_{-1} y_{-1}, then x_0 y_{-1}.
    let mut a = 1 - 2 * n;
    loop {
        push(y(a), y(a));
        if a == -1 {
            break;
        }
        push(y(a), xg(a + 1));
        push(y(a), y(a + 2));
        push(xg(a + 1), y(a + 2));
        a += 2;
    }
    push(xg(0), y(-1));
    // Second row, from y_1 y_{-1} to y_{2n-1} y_{2n-1}.
    push(y(1), y(-1));
    push(y(1), xg(0));
    push(y(1), y(1));
    let mut b = 1;
    while b < 2 * n - 1 {
        push(xg(b + 1), y(b));
        push(y(b + 2), y(b));
        push(y(b + 2), xg(b + 1));
        push(y(b + 2), y(b + 2));
        b += 2;
    }
    // The square.
    names.push(vec![format!("{}|{}", xg(0), xg(0))]);
    for (p, q) in [(y(-1), xg(0)), (y(1), xg(0)), (y(1), y(-1))] {
        names.push(vec![format!("{p}|{q}"), format!("{q}|{p}")]);
    }

    let one = UVTerm::new(0, 0);
    let mut basis: Vec<(String, UVElement)> = Vec::with_capacity(names.len());
    for parts in names {
        let mut elt = Vec::new();
        for p in &parts {
            let i = x.complex().index_of(p).ok_or_else(|| Error::invalid(format!("missing generator {p}")))?;
            elt.push((one, i));
        }
        basis.push((parts.join("+"), elt));
    }
    extract_subcomplex(&x, &basis)
}
