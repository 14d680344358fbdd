//! Coefficient tables of the closed-form scaling function
//!
//!   F(S,a,b) = -(e^{-(a+b)S}/6) (T/D) (E/U)^3,   c = sqrt((a^2+b^2)/2),
//!
//! with T = sum t_{ij} sigma^i tau^j and U = sum u_{ij} sigma^i tau^j over
//! sigma = e^{-aS}, tau = e^{-bS}, and t_{ij} = t^(0)_{ij} + c t^(1)_{ij}
//! (likewise u). Everything here is stored exactly; the factored builder
//! mirrors the source expressions term by term so the transcription can be
//! audited, and the symmetry identities t_{ij}(a,b) = t_{ji}(b,a),
//! u_{ij}(a,b) = u_{ji}(b,a) are enforced as exact polynomial identities in
//! the tests.
//!
//! Also houses the b = 0 specialization
//!
//!   F(S,a,0) = -36 sqrt(2) a^3 sum_{m=1..5} p_m(aS) e^{-m aS}
//!              / ((577+408 sqrt(2)) (sum_{m=0..2} q_m(aS) e^{-m aS})^3)
//!
//! with p_m cubic and q_m quadratic, coefficients in Z[sqrt(2)].

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::poly::{CPoly, Poly2};
use crate::error::{Error, Result};

fn h(d: u32, coeffs: &[i64]) -> Poly2 {
    Poly2::homogeneous(d, coeffs)
}

fn a() -> Poly2 {
    Poly2::var_a()
}

fn b() -> Poly2 {
    Poly2::var_b()
}

/// (a+b)
fn apb() -> Poly2 {
    h(1, &[1, 1])
}
/// (a-b)
fn amb() -> Poly2 {
    h(1, &[1, -1])
}
/// (a^2 - b^2)
fn a2mb2() -> Poly2 {
    h(2, &[1, 0, -1])
}
/// (2a^2 + b^2)
fn q2a() -> Poly2 {
    h(2, &[2, 0, 1])
}
/// (a^2 + 2b^2)
fn q2b() -> Poly2 {
    h(2, &[1, 0, 2])
}
/// (a^4 + 7a^2 b^2 + b^4)
fn quart() -> Poly2 {
    h(4, &[1, 0, 7, 0, 1])
}

fn prod(factors: &[Poly2]) -> Poly2 {
    let mut acc = Poly2::constant(1);
    for f in factors {
        acc = acc.mul(f);
    }
    acc
}

fn t0_table() -> [[Poly2; 5]; 5] {
    [
        [
            // t00: (a+b)^3 (396 a^10 + ... + 396 b^10)
            prod(&[
                apb().pow(3),
                h(
                    10,
                    &[
                        396, 1448, 3672, 6520, 9135, 10146, 9135, 6520, 3672, 1448, 396,
                    ],
                ),
            ]),
            // t01: -4 (a^2-b^2)^2 (198 a^9 + ... + 48 b^9)
            prod(&[
                a2mb2().pow(2),
                h(9, &[198, 502, 1099, 1551, 1806, 1596, 1128, 596, 224, 48]),
            ])
            .scale_int(-4),
            // t02: -6 b (a^2-b^2) (2a^2+b^2) (198 a^8 + ... + 12 b^8)
            prod(&[
                b(),
                a2mb2(),
                q2a(),
                h(8, &[198, 280, 611, 584, 599, 368, 200, 64, 12]),
            ])
            .scale_int(-6),
            // t03: 4 a (a^2-b^2)^2 (2a^2+b^2) (99 a^6 + ... + 16 b^6)
            prod(&[
                a(),
                a2mb2().pow(2),
                q2a(),
                h(6, &[99, 29, 186, 40, 104, 12, 16]),
            ])
            .scale_int(4),
            // t04: -(a-b)^3 (2a^2+b^2)^2 (99 a^6 - ... + 12 b^6)
            prod(&[
                amb().pow(3),
                q2a().pow(2),
                h(6, &[99, -82, 191, -120, 104, -40, 12]),
            ])
            .scale_int(-1),
        ],
        [
            // t10: -4 (a^2-b^2)^2 (48 a^9 + ... + 198 b^9)
            prod(&[
                a2mb2().pow(2),
                h(9, &[48, 224, 596, 1128, 1596, 1806, 1551, 1099, 502, 198]),
            ])
            .scale_int(-4),
            // t11: 8 (a+b)^3 (a^4+7a^2b^2+b^4) (48 a^6 + ... + 48 b^6)
            prod(&[
                apb().pow(3),
                quart(),
                h(6, &[48, 74, 168, 149, 168, 74, 48]),
            ])
            .scale_int(8),
            // t12: -24 b (a^2-b^2)^2 (2a^2+b^2) (24 a^6 + ... + 6 b^6)
            prod(&[
                b(),
                a2mb2().pow(2),
                q2a(),
                h(6, &[24, 34, 62, 54, 43, 20, 6]),
            ])
            .scale_int(-24),
            // t13: -8 a (a-b)^2 (2a^2+b^2) (a^4+7a^2b^2+b^4) (24 a^4 + ... + 10 b^4)
            prod(&[a(), amb().pow(2), q2a(), quart(), h(4, &[24, 7, 33, 6, 10])]).scale_int(-8),
            // t14: 4 (a^2-b^2)^2 (2a^2+b^2)^2 (12 a^5 - ... - 6 b^5)
            prod(&[
                a2mb2().pow(2),
                q2a().pow(2),
                h(5, &[12, -22, 27, -27, 14, -6]),
            ])
            .scale_int(4),
        ],
        [
            // t20: 6 a (a^2-b^2) (a^2+2b^2) (12 a^8 + ... + 198 b^8)
            prod(&[
                a(),
                a2mb2(),
                q2b(),
                h(8, &[12, 64, 200, 368, 599, 584, 611, 280, 198]),
            ])
            .scale_int(6),
            // t21: -24 a (a^2-b^2)^2 (a^2+2b^2) (6 a^6 + ... + 24 b^6)
            prod(&[
                a(),
                a2mb2().pow(2),
                q2b(),
                h(6, &[6, 20, 43, 54, 62, 34, 24]),
            ])
            .scale_int(-24),
            // t22: 0
            Poly2::zero(),
            // t23: 24 a^2 (a^2-b^2)^2 (2a^2+b^2) (a^2+2b^2) (3a^3 - 2a^2 b + 2ab^2 - 2b^3)
            prod(&[
                a(),
                a(),
                a2mb2().pow(2),
                q2a(),
                q2b(),
                h(3, &[3, -2, 2, -2]),
            ])
            .scale_int(24),
            // t24: -6 a (a^2-b^2) (2a^2+b^2)^2 (a^2+2b^2) (3a^4 - 8a^3b + 11a^2b^2 - 8ab^3 + 6b^4)
            prod(&[a(), a2mb2(), q2a().pow(2), q2b(), h(4, &[3, -8, 11, -8, 6])]).scale_int(-6),
        ],
        [
            // t30: 4 b (a^2-b^2)^2 (a^2+2b^2) (16 a^6 + ... + 99 b^6)
            prod(&[
                b(),
                a2mb2().pow(2),
                q2b(),
                h(6, &[16, 12, 104, 40, 186, 29, 99]),
            ])
            .scale_int(4),
            // t31: -8 b (a-b)^2 (a^2+2b^2) (a^4+7a^2b^2+b^4) (10 a^4 + ... + 24 b^4)
            prod(&[b(), amb().pow(2), q2b(), quart(), h(4, &[10, 6, 33, 7, 24])]).scale_int(-8),
            // t32: -24 b^2 (a^2-b^2)^2 (2a^2+b^2) (a^2+2b^2) (2a^3 - 2a^2b + 2ab^2 - 3b^3)
            prod(&[
                b(),
                b(),
                a2mb2().pow(2),
                q2a(),
                q2b(),
                h(3, &[2, -2, 2, -3]),
            ])
            .scale_int(-24),
            // t33: -8 a b (a+b)^3 (2a^2+b^2) (a^2+2b^2) (a^4+7a^2b^2+b^4)
            prod(&[a(), b(), apb().pow(3), q2a(), q2b(), quart()]).scale_int(-8),
            // t34: 4 b (a^2-b^2)^2 (2a^2+b^2)^2 (a^2+2b^2) (2a^2 - ab + 3b^2)
            prod(&[b(), a2mb2().pow(2), q2a().pow(2), q2b(), h(2, &[2, -1, 3])]).scale_int(4),
        ],
        [
            // t40: (a-b)^3 (a^2+2b^2)^2 (12 a^6 - ... + 99 b^6)
            prod(&[
                amb().pow(3),
                q2b().pow(2),
                h(6, &[12, -40, 104, -120, 191, -82, 99]),
            ]),
            // t41: -4 (a^2-b^2)^2 (a^2+2b^2)^2 (6 a^5 - ... - 12 b^5)
            prod(&[
                a2mb2().pow(2),
                q2b().pow(2),
                h(5, &[6, -14, 27, -27, 22, -12]),
            ])
            .scale_int(-4),
            // t42: 6 b (a^2-b^2) (2a^2+b^2) (a^2+2b^2)^2 (6a^4 - 8a^3b + 11a^2b^2 - 8ab^3 + 3b^4)
            prod(&[b(), a2mb2(), q2a(), q2b().pow(2), h(4, &[6, -8, 11, -8, 3])]).scale_int(6),
            // t43: 4 a (a^2-b^2)^2 (2a^2+b^2) (a^2+2b^2)^2 (3a^2 - ab + 2b^2)
            prod(&[a(), a2mb2().pow(2), q2a(), q2b().pow(2), h(2, &[3, -1, 2])]).scale_int(4),
            // t44: -(a+b)^3 (2a^2+b^2)^2 (a^2+2b^2)^2 (3a^2 + 2ab + 3b^2)
            prod(&[apb().pow(3), q2a().pow(2), q2b().pow(2), h(2, &[3, 2, 3])]).scale_int(-1),
        ],
    ]
}

fn t1_table() -> [[Poly2; 5]; 5] {
    [
        [
            // t00: 4 (a+b)^4 (10a^4+18a^3b+25a^2b^2+18ab^3+10b^4)(14a^4+12a^3b+29a^2b^2+12ab^3+14b^4)
            prod(&[
                apb().pow(4),
                h(4, &[10, 18, 25, 18, 10]),
                h(4, &[14, 12, 29, 12, 14]),
            ])
            .scale_int(4),
            // t01: -4 (a^2-b^2)^2 (280 a^8 + ... + 68 b^8)
            prod(&[
                a2mb2().pow(2),
                h(8, &[280, 710, 1414, 1839, 1881, 1428, 812, 316, 68]),
            ])
            .scale_int(-4),
            // t02: -24 b (a^2-b^2) (2a^2+b^2) (10a^3+7a^2b+8ab^2+2b^3)(7a^4+5a^3b+9a^2b^2+4ab^3+2b^4)
            prod(&[
                b(),
                a2mb2(),
                q2a(),
                h(3, &[10, 7, 8, 2]),
                h(4, &[7, 5, 9, 4, 2]),
            ])
            .scale_int(-24),
            // t03: 4 (a^2-b^2)^2 (2a^2+b^2) (140 a^6 + ... + 4 b^6)
            prod(&[a2mb2().pow(2), q2a(), h(6, &[140, 41, 193, 36, 68, 4, 4])]).scale_int(4),
            // t04: -4 (a-b)^3 (2a^2+b^2)^2 (5a^2-2ab+2b^2)(7a^3-3a^2b+6ab^2-2b^3)
            prod(&[
                amb().pow(3),
                q2a().pow(2),
                h(2, &[5, -2, 2]),
                h(3, &[7, -3, 6, -2]),
            ])
            .scale_int(-4),
        ],
        [
            // t10: -4 (a^2-b^2)^2 (68 a^8 + ... + 280 b^8)
            prod(&[
                a2mb2().pow(2),
                h(8, &[68, 316, 812, 1428, 1881, 1839, 1414, 710, 280]),
            ])
            .scale_int(-4),
            // t11: 16 (a+b)^2 (a^4+7a^2b^2+b^4) (34 a^6 + ... + 34 b^6)
            prod(&[
                apb().pow(2),
                quart(),
                h(6, &[34, 86, 155, 179, 155, 86, 34]),
            ])
            .scale_int(16),
            // t12: -24 b (a^2-b^2)^2 (2a^2+b^2) (34 a^5 + ... + 8 b^5)
            prod(&[b(), a2mb2().pow(2), q2a(), h(5, &[34, 48, 71, 52, 30, 8])]).scale_int(-24),
            // t13: -16 (a-b)^2 (2a^2+b^2) (a^4+7a^2b^2+b^4) (17a^4 + 5a^3b + 15a^2b^2 + 2ab^3 + 2b^4)
            prod(&[amb().pow(2), q2a(), quart(), h(4, &[17, 5, 15, 2, 2])]).scale_int(-16),
            // t14: 4 (a^2-b^2)^2 (2a^2+b^2)^2 (17a^4 - 31a^3b + 30a^2b^2 - 22ab^3 + 8b^4)
            prod(&[a2mb2().pow(2), q2a().pow(2), h(4, &[17, -31, 30, -22, 8])]).scale_int(4),
        ],
        [
            // t20: 24 a (a^2-b^2) (a^2+2b^2) (2a^3+8a^2b+7ab^2+10b^3)(2a^4+4a^3b+9a^2b^2+5ab^3+7b^4)
            prod(&[
                a(),
                a2mb2(),
                q2b(),
                h(3, &[2, 8, 7, 10]),
                h(4, &[2, 4, 9, 5, 7]),
            ])
            .scale_int(24),
            // t21: -24 a (a^2-b^2)^2 (a^2+2b^2) (8 a^5 + ... + 34 b^5)
            prod(&[a(), a2mb2().pow(2), q2b(), h(5, &[8, 30, 52, 71, 48, 34])]).scale_int(-24),
            // t22: 0
            Poly2::zero(),
            // t23: 24 a (a^2-b^2)^2 (2a^2+b^2) (a^2+2b^2) (4a^3 - 3a^2b - 2b^3)
            prod(&[a(), a2mb2().pow(2), q2a(), q2b(), h(3, &[4, -3, 0, -2])]).scale_int(24),
            // t24: -24 a (a-2b) (a^2-b^2) (2a^2+b^2)^2 (a^2+2b^2) (a^2-ab+b^2)
            prod(&[
                a(),
                h(1, &[1, -2]),
                a2mb2(),
                q2a().pow(2),
                q2b(),
                h(2, &[1, -1, 1]),
            ])
            .scale_int(-24),
        ],
        [
            // t30: 4 (a^2-b^2)^2 (a^2+2b^2) (4 a^6 + ... + 140 b^6)
            prod(&[a2mb2().pow(2), q2b(), h(6, &[4, 4, 68, 36, 193, 41, 140])]).scale_int(4),
            // t31: -16 (a-b)^2 (a^2+2b^2) (a^4+7a^2b^2+b^4) (2a^4 + 2a^3b + 15a^2b^2 + 5ab^3 + 17b^4)
            prod(&[amb().pow(2), q2b(), quart(), h(4, &[2, 2, 15, 5, 17])]).scale_int(-16),
            // t32: -24 b (a^2-b^2)^2 (2a^2+b^2) (a^2+2b^2) (2a^3 + 3ab^2 - 4b^3)
            prod(&[b(), a2mb2().pow(2), q2a(), q2b(), h(3, &[2, 0, 3, -4])]).scale_int(-24),
            // t33: 16 (a+b)^2 (2a^2+b^2) (a^2+2b^2) (a^2-ab+b^2) (a^4+7a^2b^2+b^4)
            prod(&[apb().pow(2), q2a(), q2b(), h(2, &[1, -1, 1]), quart()]).scale_int(16),
            // t34: -4 (a^2-b^2)^2 (2a^2+b^2)^2 (a^2+2b^2) (a^2 - ab + 4b^2)
            prod(&[a2mb2().pow(2), q2a().pow(2), q2b(), h(2, &[1, -1, 4])]).scale_int(-4),
        ],
        [
            // t40: -4 (a-b)^3 (a^2+2b^2)^2 (2a^2-2ab+5b^2)(2a^3-6a^2b+3ab^2-7b^3)
            prod(&[
                amb().pow(3),
                q2b().pow(2),
                h(2, &[2, -2, 5]),
                h(3, &[2, -6, 3, -7]),
            ])
            .scale_int(-4),
            // t41: 4 (a^2-b^2)^2 (a^2+2b^2)^2 (8a^4 - 22a^3b + 30a^2b^2 - 31ab^3 + 17b^4)
            prod(&[a2mb2().pow(2), q2b().pow(2), h(4, &[8, -22, 30, -31, 17])]).scale_int(4),
            // t42: -24 b (2a-b) (a^2-b^2) (2a^2+b^2) (a^2+2b^2)^2 (a^2-ab+b^2)
            prod(&[
                b(),
                h(1, &[2, -1]),
                a2mb2(),
                q2a(),
                q2b().pow(2),
                h(2, &[1, -1, 1]),
            ])
            .scale_int(-24),
            // t43: -4 (a^2-b^2)^2 (2a^2+b^2) (a^2+2b^2)^2 (4a^2 - ab + b^2)
            prod(&[a2mb2().pow(2), q2a(), q2b().pow(2), h(2, &[4, -1, 1])]).scale_int(-4),
            // t44: 4 (a+b)^4 (2a^2+b^2)^2 (a^2+2b^2)^2
            prod(&[apb().pow(4), q2a().pow(2), q2b().pow(2)]).scale_int(4),
        ],
    ]
}

fn u0_table() -> [[Poly2; 3]; 3] {
    [
        [
            // u00: -(a-b)^2 (a+b) (2a^2+b^2) (a^2+2b^2)
            prod(&[amb().pow(2), apb(), q2a(), q2b()]).scale_int(-1),
            // u01: 4 (a-b)^2 (a+b) (a^2+2b^2)^2
            prod(&[amb().pow(2), apb(), q2b().pow(2)]).scale_int(4),
            // u02: -(a-b) (a^2+2b^2) (2a^4+17a^2b^2+17b^4)
            prod(&[amb(), q2b(), h(4, &[2, 0, 17, 0, 17])]).scale_int(-1),
        ],
        [
            // u10: 4 (a-b)^2 (a+b) (2a^2+b^2)^2
            prod(&[amb().pow(2), apb(), q2a().pow(2)]).scale_int(4),
            // u11: -8 (a+b) (4a^2+ab+4b^2) (a^4+7a^2b^2+b^4)
            prod(&[apb(), h(2, &[4, 1, 4]), quart()]).scale_int(-8),
            // u12: 4 (a^2-b^2) (4a^5+14a^4b+22a^3b^2+32a^2b^3+19ab^4+17b^5)
            prod(&[a2mb2(), h(5, &[4, 14, 22, 32, 19, 17])]).scale_int(4),
        ],
        [
            // u20: (a-b) (2a^2+b^2) (17a^4+17a^2b^2+2b^4)
            prod(&[amb(), q2a(), h(4, &[17, 0, 17, 0, 2])]),
            // u21: -4 (a^2-b^2) (17a^5+19a^4b+32a^3b^2+22a^2b^3+14ab^4+4b^5)
            prod(&[a2mb2(), h(5, &[17, 19, 32, 22, 14, 4])]).scale_int(-4),
            // u22: (a+b) (34a^6+76a^5b+137a^4b^2+154a^3b^3+137a^2b^4+76ab^5+34b^6)
            prod(&[apb(), h(6, &[34, 76, 137, 154, 137, 76, 34])]),
        ],
    ]
}

fn u1_table() -> [[Poly2; 3]; 3] {
    [
        [
            // u00: 0
            Poly2::zero(),
            // u01: -12 b (a-b)^2 (a+b) (a^2+2b^2)
            prod(&[b(), amb().pow(2), apb(), q2b()]).scale_int(-12),
            // u02: 12 b (a-b) (a^2+2b^2)^2
            prod(&[b(), amb(), q2b().pow(2)]).scale_int(12),
        ],
        [
            // u10: -12 a (a-b)^2 (a+b) (2a^2+b^2)
            prod(&[a(), amb().pow(2), apb(), q2a()]).scale_int(-12),
            // u11: 48 (a^2+ab+b^2) (a^4+7a^2b^2+b^4)
            prod(&[h(2, &[1, 1, 1]), quart()]).scale_int(48),
            // u12: -12 (a^2-b^2) (2a^4+6a^3b+11a^2b^2+9ab^3+8b^4)
            prod(&[a2mb2(), h(4, &[2, 6, 11, 9, 8])]).scale_int(-12),
        ],
        [
            // u20: -12 a (a-b) (2a^2+b^2)^2
            prod(&[a(), amb(), q2a().pow(2)]).scale_int(-12),
            // u21: 12 (a^2-b^2) (8a^4+9a^3b+11a^2b^2+6ab^3+2b^4)
            prod(&[a2mb2(), h(4, &[8, 9, 11, 6, 2])]).scale_int(12),
            // u22: -12 (a+b)^2 (a^2+ab+b^2) (4a^2+ab+4b^2)
            prod(&[apb().pow(2), h(2, &[1, 1, 1]), h(2, &[4, 1, 4])]).scale_int(-12),
        ],
    ]
}

/// The six factors of D(a,b) as p0 + c p1 pairs.
fn d_factors() -> [CPoly; 6] {
    [
        // (a + 2c)
        CPoly::new(a(), Poly2::constant(2)),
        // (b + 2c)
        CPoly::new(b(), Poly2::constant(2)),
        // (5a^3 + 7a^2 c + 4ab^2 + 2b^2 c)
        CPoly::new(h(3, &[5, 0, 4, 0]), h(2, &[7, 0, 2])),
        // (4a^2 b + 2a^2 c + 5b^3 + 7b^2 c)
        CPoly::new(h(3, &[0, 4, 0, 5]), h(2, &[2, 0, 7])),
        // (17a^2 (a^2+b^2) + 12a (2a^2+b^2) c + 2b^4)
        CPoly::new(h(4, &[17, 0, 17, 0, 2]), h(3, &[24, 0, 12, 0])),
        // (2a^4 + 12b (a^2+2b^2) c + 17b^2 (a^2+b^2))
        CPoly::new(h(4, &[2, 0, 17, 0, 17]), h(3, &[0, 12, 0, 24])),
    ]
}

/// Coefficients in Z[sqrt(2)]: (plain, coefficient of sqrt 2).
pub type Z2 = (i64, i64);

/// k (plain + root2 sqrt(2))
const fn sc(k: i64, plain: i64, root2: i64) -> Z2 {
    (k * plain, k * root2)
}

/// p_m(r), m = 1..5, cubic in r; coefficients (r^0, r^1, r^2, r^3).
fn pm_table() -> [[Z2; 4]; 5] {
    [
        // p1 = -6(816+577√2) - 6(915+647√2) r - 3(618+437√2) r^2 - 2(99+70√2) r^3
        [
            sc(-6, 816, 577),
            sc(-6, 915, 647),
            sc(-3, 618, 437),
            sc(-2, 99, 70),
        ],
        // p2 = -24(222+157√2) - 12(126+89√2) r + 12(27+19√2) r^2 + 4(24+17√2) r^3
        [
            sc(-24, 222, 157),
            sc(-12, 126, 89),
            sc(12, 27, 19),
            sc(4, 24, 17),
        ],
        // p3 = -108(4+3√2) - 180(3+2√2) r - 54(4+3√2) r^2 - 12(3+2√2) r^3
        [sc(-108, 4, 3), sc(-180, 3, 2), sc(-54, 4, 3), sc(-12, 3, 2)],
        // p4 = -24(-6+5√2) + 12(-6+√2) r - 12(3+√2) r^2 - 4√2 r^3
        [sc(-24, -6, 5), sc(12, -6, 1), sc(-12, 3, 1), sc(-4, 0, 1)],
        // p5 = -6(-24+17√2) + 6(-27+19√2) r - 3(-18+13√2) r^2 + 2(-3+2√2) r^3
        [
            sc(-6, -24, 17),
            sc(6, -27, 19),
            sc(-3, -18, 13),
            sc(2, -3, 2),
        ],
    ]
}

/// q_m(r), m = 0..2, quadratic in r; coefficients (r^0, r^1, r^2).
fn qm_table() -> [[Z2; 3]; 3] {
    [
        // q0 = 6 + 3√2 r + r^2
        [(6, 0), (0, 3), (1, 0)],
        // q1 = -24(-4+3√2) - 12(-3+2√2) r + 2(-4+3√2) r^2
        [sc(-24, -4, 3), sc(-12, -3, 2), sc(2, -4, 3)],
        // q2 = 6(-17+12√2) - 3(-24+17√2) r + (-17+12√2) r^2
        [sc(6, -17, 12), sc(-3, -24, 17), sc(1, -17, 12)],
    ]
}

pub struct ScalingTables {
    /// t[i][j] = t0 + c t1
    pub t: Vec<Vec<CPoly>>,
    /// u[i][j] = u0 + c u1
    pub u: Vec<Vec<CPoly>>,
    /// E = 6 a b (a-b)^2 (a+b) (2a^2+b^2) (a^2+2b^2), expanded
    pub e_full: Poly2,
    /// E / (a-b)^2
    pub e_over_amb2: Poly2,
    /// E / b
    pub e_over_b: Poly2,
    pub d_factors: [CPoly; 6],
    /// b = 0 reduction: p_m, m = 1..5 (cubics in r = aS)
    pub pm: [[Z2; 4]; 5],
    /// q_m, m = 0..2 (quadratics)
    pub qm: [[Z2; 3]; 3],
    /// normalization of the b = 0 form: (577, 408) for 577 + 408 sqrt(2)
    pub b0_denom: Z2,
}

static TABLES: OnceLock<ScalingTables> = OnceLock::new();

pub fn tables() -> &'static ScalingTables {
    TABLES.get_or_init(|| {
        let t0 = t0_table();
        let t1 = t1_table();
        let u0 = u0_table();
        let u1 = u1_table();
        let t: Vec<Vec<CPoly>> = t0
            .into_iter()
            .zip(t1)
            .map(|(r0, r1)| {
                r0.into_iter()
                    .zip(r1)
                    .map(|(p0, p1)| CPoly::new(p0, p1))
                    .collect()
            })
            .collect();
        let u: Vec<Vec<CPoly>> = u0
            .into_iter()
            .zip(u1)
            .map(|(r0, r1)| {
                r0.into_iter()
                    .zip(r1)
                    .map(|(p0, p1)| CPoly::new(p0, p1))
                    .collect()
            })
            .collect();
        let e_core = prod(&[apb(), q2a(), q2b()]).scale_int(6);
        ScalingTables {
            t,
            u,
            e_full: prod(&[a(), b(), amb().pow(2)]).mul(&e_core),
            e_over_amb2: prod(&[a(), b()]).mul(&e_core),
            e_over_b: prod(&[a(), amb().pow(2)]).mul(&e_core),
            d_factors: d_factors(),
            pm: pm_table(),
            qm: qm_table(),
            b0_denom: (577, 408),
        }
    })
}

// ---------------------------------------------------------------------------
// JSON dump / load for auditing the transcription
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct PolyEntry {
    pub i: u32,
    pub j: u32,
    pub component: u8,
    pub terms: Vec<(u32, u32, String)>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct TablesDump {
    pub t: Vec<PolyEntry>,
    pub u: Vec<PolyEntry>,
    pub e: Vec<(u32, u32, String)>,
    pub d: Vec<PolyEntry>,
    pub pm: Vec<Vec<(i64, i64)>>,
    pub qm: Vec<Vec<(i64, i64)>>,
    pub b0_denom: (i64, i64),
}

pub fn dump_tables() -> TablesDump {
    let tb = tables();
    let mut t_entries = Vec::new();
    let mut u_entries = Vec::new();
    for (i, row) in tb.t.iter().enumerate() {
        for (j, p) in row.iter().enumerate() {
            t_entries.push(PolyEntry {
                i: i as u32,
                j: j as u32,
                component: 0,
                terms: p.p0.dump(),
            });
            t_entries.push(PolyEntry {
                i: i as u32,
                j: j as u32,
                component: 1,
                terms: p.p1.dump(),
            });
        }
    }
    for (i, row) in tb.u.iter().enumerate() {
        for (j, p) in row.iter().enumerate() {
            u_entries.push(PolyEntry {
                i: i as u32,
                j: j as u32,
                component: 0,
                terms: p.p0.dump(),
            });
            u_entries.push(PolyEntry {
                i: i as u32,
                j: j as u32,
                component: 1,
                terms: p.p1.dump(),
            });
        }
    }
    let d_entries = tb
        .d_factors
        .iter()
        .enumerate()
        .flat_map(|(k, f)| {
            vec![
                PolyEntry {
                    i: k as u32,
                    j: 0,
                    component: 0,
                    terms: f.p0.dump(),
                },
                PolyEntry {
                    i: k as u32,
                    j: 0,
                    component: 1,
                    terms: f.p1.dump(),
                },
            ]
        })
        .collect();
    TablesDump {
        t: t_entries,
        u: u_entries,
        e: tb.e_full.dump(),
        d: d_entries,
        pm: tb.pm.iter().map(|r| r.to_vec()).collect(),
        qm: tb.qm.iter().map(|r| r.to_vec()).collect(),
        b0_denom: tb.b0_denom,
    }
}

/// Verify a dump against the built-in tables; used to audit an edited or
/// externally stored copy line by line.
pub fn audit_dump(dump: &TablesDump) -> Result<()> {
    let reference = dump_tables();
    if *dump == reference {
        Ok(())
    } else {
        for (got, want) in dump.t.iter().zip(reference.t.iter()) {
            if got != want {
                return Err(Error::TableAudit(format!(
                    "t entry (i={}, j={}, component={}) differs",
                    want.i, want.j, want.component
                )));
            }
        }
        for (got, want) in dump.u.iter().zip(reference.u.iter()) {
            if got != want {
                return Err(Error::TableAudit(format!(
                    "u entry (i={}, j={}, component={}) differs",
                    want.i, want.j, want.component
                )));
            }
        }
        Err(Error::TableAudit("tables differ".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::real;

    #[test]
    fn t_and_u_symmetry_exact() {
        let tb = tables();
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(
                    tb.t[i][j].swap_vars(),
                    tb.t[j][i],
                    "t[{}][{}](a,b) != t[{}][{}](b,a)",
                    i,
                    j,
                    j,
                    i
                );
            }
        }
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(
                    tb.u[i][j].swap_vars(),
                    tb.u[j][i],
                    "u[{}][{}](a,b) != u[{}][{}](b,a)",
                    i,
                    j,
                    j,
                    i
                );
            }
        }
    }

    #[test]
    fn zero_entries_as_transcribed() {
        let tb = tables();
        assert!(tb.t[2][2].p0.is_zero());
        assert!(tb.t[2][2].p1.is_zero());
        assert!(tb.u[0][0].p1.is_zero());
    }

    #[test]
    fn e_vanishes_on_diagonal_and_positive_off_it() {
        let tb = tables();
        assert!(tb.e_full.on_diagonal().is_empty());
        // positive for 0 < b < a
        for (av, bv) in [(1.0f64, 0.5f64), (2.5, 0.3), (3.0, 2.9)] {
            let v = tb.e_full.eval_real(&real(128, av), &real(128, bv));
            assert!(v > 0, "E({}, {}) should be positive", av, bv);
        }
    }

    #[test]
    fn d_factors_swap_pairwise() {
        let tb = tables();
        let f = &tb.d_factors;
        assert_eq!(f[0].swap_vars(), f[1]);
        assert_eq!(f[2].swap_vars(), f[3]);
        assert_eq!(f[4].swap_vars(), f[5]);
    }

    #[test]
    fn u_rows_vanish_identically_at_b_zero() {
        // at b = 0 (c = a/sqrt 2) the whole U sum vanishes as a series in S:
        // both the plain and the c components of each row sum to zero
        let tb = tables();
        for i in 0..3 {
            let mut sum0 = Poly2::zero();
            let mut sum1 = Poly2::zero();
            for j in 0..3 {
                sum0 = sum0.add(&tb.u[i][j].p0);
                sum1 = sum1.add(&tb.u[i][j].p1);
            }
            // keep only b^0 terms
            let pure_a = |p: &Poly2| -> Vec<(u32, String)> {
                p.terms()
                    .filter(|((_, jb), _)| *jb == 0)
                    .map(|((ia, _), c)| (*ia, c.to_string()))
                    .collect()
            };
            assert!(pure_a(&sum0).is_empty(), "row {} plain part at b=0", i);
            assert!(pure_a(&sum1).is_empty(), "row {} c part at b=0", i);
        }
    }

    #[test]
    fn e_reductions_consistent() {
        let tb = tables();
        let amb2 = amb().pow(2);
        assert_eq!(tb.e_over_amb2.mul(&amb2), tb.e_full);
        assert_eq!(tb.e_over_b.mul(&b()), tb.e_full);
    }

    #[test]
    fn dump_audit_round_trip() {
        let d = dump_tables();
        let json = serde_json::to_string(&d).unwrap();
        let back: TablesDump = serde_json::from_str(&json).unwrap();
        audit_dump(&back).unwrap();
        // a corrupted copy is rejected
        let mut bad = back.clone();
        bad.t[0].terms[0].2 = "999999".into();
        assert!(audit_dump(&bad).is_err());
    }

    #[test]
    fn b0_reduction_seed_values_nonzero() {
        // numerator at r = 0: sum_m p_m(0) = -10368 - 7776 sqrt(2) != 0,
        // denominator at r = 0: sum_m q_m(0) = 0 (the S^3 pole comes from
        // the cubed denominator)
        let tb = tables();
        let mut n = (0i64, 0i64);
        for m in 0..5 {
            n.0 += tb.pm[m][0].0;
            n.1 += tb.pm[m][0].1;
        }
        assert_eq!(n, (-10368, -7776));
        let mut d = (0i64, 0i64);
        for m in 0..3 {
            d.0 += tb.qm[m][0].0;
            d.1 += tb.qm[m][0].1;
        }
        assert_eq!(d, (0, 0));
    }
}
