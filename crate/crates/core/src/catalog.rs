//! Permutation models of standard small groups.

use crate::error::Result;
use crate::group::{direct_product, small_generating_set, FiniteGroup, Limits};
use crate::perm::Perm;

fn gen(degree: usize, gens: Vec<Perm>) -> FiniteGroup {
    FiniteGroup::generate(degree, &gens).expect("catalog group within default caps")
}

pub fn trivial() -> FiniteGroup {
    FiniteGroup::trivial(1)
}

/// `C_n` on `n` points.
pub fn cyclic(n: usize) -> FiniteGroup {
    let images = (0..n as u32).map(|x| (x + 1) % n as u32).collect();
    gen(n, vec![Perm::from_images(images).unwrap()])
}

/// `(C_p)^k` on `p·k` points.
pub fn elementary_abelian(p: usize, k: usize) -> FiniteGroup {
    abelian(&vec![p; k])
}

/// `C_{n_1} × ⋯ × C_{n_k}` on `Σ n_i` points.
pub fn abelian(factors: &[usize]) -> FiniteGroup {
    let degree: usize = factors.iter().sum::<usize>().max(1);
    let mut gens = Vec::new();
    let mut offset = 0u32;
    for &n in factors {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for x in 0..n as u32 {
            images[(offset + x) as usize] = offset + (x + 1) % n as u32;
        }
        gens.push(Perm::from_images(images).unwrap());
        offset += n as u32;
    }
    gen(degree, gens)
}

/// Dihedral group of order `2n` on `n` points, `n ≥ 3`.
pub fn dihedral(n: usize) -> FiniteGroup {
    let rot = (0..n as u32).map(|x| (x + 1) % n as u32).collect();
    let refl = (0..n as u32).map(|x| (n as u32 - x) % n as u32).collect();
    gen(n, vec![Perm::from_images(rot).unwrap(), Perm::from_images(refl).unwrap()])
}

pub fn symmetric(n: usize) -> FiniteGroup {
    if n < 2 {
        return FiniteGroup::trivial(n.max(1));
    }
    let cycle = (0..n as u32).map(|x| (x + 1) % n as u32).collect();
    let mut swap: Vec<u32> = (0..n as u32).collect();
    swap.swap(0, 1);
    gen(n, vec![Perm::from_images(cycle).unwrap(), Perm::from_images(swap).unwrap()])
}

pub fn alternating(n: usize) -> FiniteGroup {
    if n < 3 {
        return FiniteGroup::trivial(n.max(1));
    }
    let gens = (2..n as u32)
        .map(|k| {
            let mut images: Vec<u32> = (0..n as u32).collect();
            images[0] = 1;
            images[1] = k;
            images[k as usize] = 0;
            Perm::from_images(images).unwrap()
        })
        .collect();
    gen(n, gens)
}

/// Left-regular model of the group on `0..n` with the given multiplication.
pub fn from_multiplication(n: usize, mul: impl Fn(usize, usize) -> usize) -> FiniteGroup {
    let gens = (0..n)
        .map(|a| Perm::from_images((0..n).map(|x| mul(a, x) as u32).collect()).expect("Latin square row"))
        .collect();
    let full = gen(n, gens);
    let small = small_generating_set(&full, &full.all()).into_iter().map(|x| full.element(x).clone()).collect();
    gen(n, small)
}

/// `C_m ⋊ C_k` with the generator of `C_k` acting as `x ↦ r·x`; needs `r^k ≡ 1 (mod m)`.
pub fn metacyclic(m: usize, k: usize, r: usize) -> FiniteGroup {
    let pow = |e: usize| (0..e).fold(1usize, |acc, _| acc * r % m);
    from_multiplication(m * k, |x, y| {
        let (a1, b1) = (x / k, x % k);
        let (a2, b2) = (y / k, y % k);
        ((a1 + pow(b1) * a2) % m) * k + (b1 + b2) % k
    })
}

/// Generalized quaternion group of order `4n` (`n ≥ 2`): `⟨x, y | x^{2n}, y² = x^n, y⁻¹xy = x⁻¹⟩`.
pub fn quaternion(order: usize) -> FiniteGroup {
    let m = order / 2;
    let n = m / 2;
    from_multiplication(order, |x, y| {
        let (a1, b1) = (x / 2, x % 2);
        let (a2, b2) = (y / 2, y % 2);
        let (a, b) = match (b1, b2) {
            (0, _) => (a1 + a2, b2),
            (1, 0) => (a1 + m - a2, 1),
            _ => (a1 + m - a2 + n, 0),
        };
        (a % m) * 2 + b
    })
}

/// `GL(n, p)` acting on the `pⁿ − 1` nonzero vectors of `F_pⁿ`.
pub fn general_linear(n: usize, p: usize) -> FiniteGroup {
    linear_group(n, p, true)
}

/// `SL(n, p)`, generated by transvections, on the nonzero vectors.
pub fn special_linear(n: usize, p: usize) -> FiniteGroup {
    linear_group(n, p, false)
}

fn linear_group(n: usize, p: usize, with_diagonal: bool) -> FiniteGroup {
    let size = p.pow(n as u32);
    let digits = |v: usize| -> Vec<usize> { (0..n).map(|i| v / p.pow(i as u32) % p).collect() };
    let encode = |d: &[usize]| -> usize { d.iter().enumerate().map(|(i, &x)| x * p.pow(i as u32)).sum() };
    let act = |m: &dyn Fn(&[usize]) -> Vec<usize>| -> Perm {
        let images = (1..size).map(|v| (encode(&m(&digits(v))) - 1) as u32).collect();
        Perm::from_images(images).expect("invertible linear map")
    };
    let mut gens = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                gens.push(act(&|d: &[usize]| {
                    let mut e = d.to_vec();
                    e[i] = (e[i] + d[j]) % p;
                    e
                }));
            }
        }
    }
    if with_diagonal {
        let primitive = (2..p).find(|&w| (1..p - 1).all(|e| w.pow(e as u32) % p != 1)).unwrap_or(1);
        gens.push(act(&|d: &[usize]| {
            let mut e = d.to_vec();
            e[0] = e[0] * primitive % p;
            e
        }));
    }
    FiniteGroup::generate_with_limits(size - 1, &gens, Limits { max_order: 100_000, ..Limits::default() })
        .expect("linear group within the enlarged cap")
        .with_limits(Limits::default())
}

pub fn product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    direct_product(a, b).expect("product within default caps")
}

/// All fourteen groups of order 16, each named.
pub fn groups_of_order_16() -> Vec<(&'static str, FiniteGroup)> {
    // (Z4 × Z2) ⋊ Z2 with z·x·z⁻¹ = i²·x: the Pauli group
    let pauli = from_multiplication(16, |x, y| {
        let dec = |v: usize| (v % 4, v / 4 % 2, v / 8);
        let (a1, b1, c1) = dec(x);
        let (a2, b2, c2) = dec(y);
        let a2 = if c1 == 1 { (a2 + 2 * b2) % 4 } else { a2 };
        (a1 + a2) % 4 + 4 * ((b1 + b2) % 2) + 8 * ((c1 + c2) % 2)
    });
    // Z2² ⋊ Z4 with the generator swapping the two factors
    let swap_by_c4 = from_multiplication(16, |x, y| {
        let dec = |v: usize| (v % 2, v / 2 % 2, v / 4);
        let (a1, b1, c1) = dec(x);
        let (a2, b2, c2) = dec(y);
        let (a2, b2) = if c1 % 2 == 1 { (b2, a2) } else { (a2, b2) };
        (a1 ^ a2) + 2 * (b1 ^ b2) + 4 * ((c1 + c2) % 4)
    });
    vec![
        ("C16", cyclic(16)),
        ("C4xC4", abelian(&[4, 4])),
        ("C2^2:C4", swap_by_c4),
        ("C4:C4", metacyclic(4, 4, 3)),
        ("C8xC2", abelian(&[8, 2])),
        ("M16", metacyclic(8, 2, 5)),
        ("D16", dihedral(8)),
        ("SD16", metacyclic(8, 2, 3)),
        ("Q16", quaternion(16)),
        ("C4xC2xC2", abelian(&[4, 2, 2])),
        ("D8xC2", product(&dihedral(4), &cyclic(2))),
        ("Q8xC2", product(&quaternion(8), &cyclic(2))),
        ("Pauli", pauli),
        ("C2^4", elementary_abelian(2, 4)),
    ]
}

/// Every p-group of order at most 16, up to isomorphism, with its prime.
pub fn p_groups_up_to_16() -> Vec<(String, u32, FiniteGroup)> {
    let mut out: Vec<(String, u32, FiniteGroup)> = vec![
        ("C2".into(), 2, cyclic(2)),
        ("C3".into(), 3, cyclic(3)),
        ("C4".into(), 2, cyclic(4)),
        ("V4".into(), 2, elementary_abelian(2, 2)),
        ("C5".into(), 5, cyclic(5)),
        ("C7".into(), 7, cyclic(7)),
        ("C8".into(), 2, cyclic(8)),
        ("C4xC2".into(), 2, abelian(&[4, 2])),
        ("C2^3".into(), 2, elementary_abelian(2, 3)),
        ("D8".into(), 2, dihedral(4)),
        ("Q8".into(), 2, quaternion(8)),
        ("C9".into(), 3, cyclic(9)),
        ("C3^2".into(), 3, elementary_abelian(3, 2)),
        ("C11".into(), 11, cyclic(11)),
        ("C13".into(), 13, cyclic(13)),
    ];
    out.extend(groups_of_order_16().into_iter().map(|(n, g)| (n.to_string(), 2, g)));
    out
}

/// Heisenberg group mod 3: the nonabelian group of order 27 and exponent 3.
pub fn heisenberg3() -> FiniteGroup {
    from_multiplication(27, |x, y| {
        let dec = |v: usize| (v % 3, v / 3 % 3, v / 9);
        let (a1, b1, c1) = dec(x);
        let (a2, b2, c2) = dec(y);
        (a1 + a2) % 3 + 3 * ((b1 + b2) % 3) + 9 * ((c1 + c2 + a1 * b2) % 3)
    })
}

/// Named finite groups of order at most 100.
pub fn groups_up_to_100() -> Vec<(&'static str, FiniteGroup)> {
    let frobenius21 = metacyclic(7, 3, 2);
    let frobenius20 = metacyclic(5, 4, 2);
    vec![
        ("C1", trivial()),
        ("C6", cyclic(6)),
        ("C12", cyclic(12)),
        ("S3", symmetric(3)),
        ("D8", dihedral(4)),
        ("Q8", quaternion(8)),
        ("D10", dihedral(5)),
        ("A4", alternating(4)),
        ("D12", dihedral(6)),
        ("Dic12", quaternion(12)),
        ("C3xS3", product(&cyclic(3), &symmetric(3))),
        ("D18", dihedral(9)),
        ("F20", frobenius20),
        ("F21", frobenius21),
        ("S4", symmetric(4)),
        ("SL(2,3)", special_linear(2, 3)),
        ("C2xA4", product(&cyclic(2), &alternating(4))),
        ("C3:C8", metacyclic(3, 8, 2)),
        ("C2xC2xS3", product(&elementary_abelian(2, 2), &symmetric(3))),
        ("He3", heisenberg3()),
        ("C9:C3", metacyclic(9, 3, 4)),
        ("S3xS3", product(&symmetric(3), &symmetric(3))),
        ("C9:C4", metacyclic(9, 4, 8)),
        ("D16", dihedral(8)),
        ("SD16", metacyclic(8, 2, 3)),
        ("Q16", quaternion(16)),
        ("D8xC3", product(&dihedral(4), &cyclic(3))),
        ("C5:C4xC2", product(&metacyclic(5, 4, 2), &cyclic(2))),
        ("GL(2,3)", general_linear(2, 3)),
        ("S4xC2", product(&symmetric(4), &cyclic(2))),
        ("C2^3:C7", affine_8_7()),
        ("A5", alternating(5)),
        ("C3^3", elementary_abelian(3, 3)),
        ("C3wrC3", wreath_3_3()),
        ("S3xC5", product(&symmetric(3), &cyclic(5))),
        ("D14", dihedral(7)),
        ("F42", metacyclic(7, 6, 3)),
        ("C5^2", elementary_abelian(5, 2)),
        ("C7:C3xC3", product(&metacyclic(7, 3, 2), &cyclic(3))),
        ("D20", dihedral(10)),
        ("A4xC3", product(&alternating(4), &cyclic(3))),
    ]
}

/// `C2³ ⋊ C7` acting on the 8 points of `F_2³`.
pub fn affine_8_7() -> FiniteGroup {
    let translate = |t: u32| Perm::from_images((0..8u32).map(|v| v ^ t).collect()).unwrap();
    // multiplication by a root of x³ + x + 1 on F_8
    let singer = Perm::from_images(
        (0..8u32)
            .map(|v| {
                let w = v << 1;
                if w & 8 != 0 { (w ^ 0b1011) & 7 } else { w }
            })
            .collect(),
    )
    .unwrap();
    gen(8, vec![translate(1), singer])
}

/// `C3 ≀ C3` on 9 points, order 81.
pub fn wreath_3_3() -> FiniteGroup {
    let mut c: Vec<u32> = (0..9).collect();
    c[0] = 1;
    c[1] = 2;
    c[2] = 0;
    let shift: Vec<u32> = (0..9u32).map(|x| (x + 3) % 9).collect();
    gen(9, vec![Perm::from_images(c).unwrap(), Perm::from_images(shift).unwrap()])
}

/// Primes dividing `|G|`.
pub fn dividing_primes(g: &FiniteGroup) -> Vec<u32> {
    crate::group::prime_divisors(g.order() as u64)
}

pub fn build(degree: usize, gens: &[&str]) -> Result<FiniteGroup> {
    let perms = gens.iter().map(|s| Perm::parse_cycles(degree, s)).collect::<Result<Vec<_>>>()?;
    FiniteGroup::generate(degree, &perms)
}
