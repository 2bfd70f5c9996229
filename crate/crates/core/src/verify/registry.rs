use std::sync::OnceLock;

use super::{minor, plucker_sum, Ctx, Family, IdentityCase, PluckerConvention};
use crate::coeffring::Scalar;
use crate::error::Result;
use crate::gamma::{self, ExtElem, ExtSpace};
use crate::linalg::Matrix;
use crate::polyspace::{DividedElem, Space, SymElem};

type Checks = Result<Vec<(Scalar, Scalar)>>;

/// A parameterized inverse system in `D_3`.
struct Form {
    d: usize,
    params: &'static str,
    template: &'static str,
}

const CUBIC_R2: Form = Form {
    d: 4,
    params: "abcdefghijklm",
    template: "x^(3) + a*x*z^(2) + b*x*z*w + c*x*w^(2) + d*y*z^(2) + e*y*z*w + f*y*w^(2) \
               + g*y^(2)*z + h*y^(2)*w + i*y^(3) + j*z^(3) + k*z^(2)*w + l*z*w^(2) + m*w^(3)",
};

const CUBIC_R1: Form = Form {
    d: 4,
    params: "adefghijklm",
    template: "x^(3) + a*x*z^(2) + d*y*z^(2) + e*y*z*w + f*y*w^(2) + g*y^(2)*z + h*y^(2)*w \
               + i*y^(3) + j*z^(3) + k*z^(2)*w + l*z*w^(2) + m*w^(3)",
};

const CUBIC_R3: Form = Form {
    d: 4,
    params: "tabcdefghijklmnop",
    template: "t*x^(3) + a*x*y^(2) + b*x*y*z + c*x*y*w + d*x*z^(2) + e*x*z*w + f*x*w^(2) \
               + g*y^(3) + h*y^(2)*z + i*y^(2)*w + j*y*z^(2) + k*y*z*w + l*y*w^(2) \
               + m*z^(3) + n*z^(2)*w + o*z*w^(2) + p*w^(3)",
};

const SQLIN_OPEN: Form = Form {
    d: 4,
    params: "abcgnopqrstuv",
    template: "x^(2)*y + a*x*z^(2) + b*x*z*w + c*x*w^(2) + q*x*y^(2) + r*x*y*z + s*x*y*w \
               + t*y^(2)*z + u*y^(2)*w + v*y*z^(2) + n*y*z*w + o*y*w^(2) + p*z^(2)*w + g*z*w^(2)",
};

const SQLIN_SETTLED: Form = Form {
    d: 4,
    params: "defghiklmnp",
    template: "x^(2)*y + d*x*y^(2) + e*y^(2)*z + f*y^(2)*w + g*x*z^(2) + h*y*z^(2) + i*z^(2)*w \
               + k*y*w^(2) + l*z*w^(2) + m*x*y*z + n*x*y*w + p*y*z*w",
};

const SQLIN_G: Form = Form {
    d: 4,
    params: "adefghikmnp",
    template: "a*x^(2)*y + d*x*y^(2) + e*y^(2)*z + f*y^(2)*w + g*x*z^(2) + h*y*z^(2) + i*z^(2)*w \
               + k*y*w^(2) + m*x*y*z + n*x*y*w + p*y*z*w",
};

const SQLIN_NO_G: Form = Form {
    d: 4,
    params: "adefhikmnp",
    template: "a*x^(2)*y + d*x*y^(2) + e*y^(2)*z + f*y^(2)*w + h*y*z^(2) + i*z^(2)*w \
               + k*y*w^(2) + m*x*y*z + n*x*y*w + p*y*z*w",
};

const TERNARY_CUBIC: Form = Form {
    d: 3,
    params: "adefghij",
    template: "a*x^(3) + d*x*y^(2) + e*x*y*z + f*x*z^(2) + g*y^(3) + h*y^(2)*z + i*y*z^(2) + j*z^(3)",
};

const TERNARY_SQLIN: Form = Form {
    d: 3,
    params: "bdefghij",
    template: "b*x^(2)*y + d*x*y^(2) + e*x*y*z + f*x*z^(2) + g*y^(3) + h*y^(2)*z + i*y*z^(2) + j*z^(3)",
};

const GENERIC3: &str = "c0,c1,c2,c3,c4,c5,c6,c7,c8,c9";
const GENERIC4: &str = "c0,c1,c2,c3,c4,c5,c6,c7,c8,c9,c10,c11,c12,c13,c14,c15,c16,c17,c18,c19";

const F_DEFS: &[(&str, &str)] = &[
    ("F0", "f*i - h^2"),
    ("F1", "f*g - 2*e*h + i*l"),
    ("F2", "g*l - e^2"),
    ("F3", "i*m - f*h"),
    ("F4", "g*m - 2*e*f + h*l"),
    ("F5", "h*m - f^2"),
    ("F6", "d*e^2 - d^2*f + f*g*j - 2*e*h*j + 2*d*h*k - i*k^2 - d*g*l + i*j*l"),
    ("F7", "g*j*l - e^2*j + 2*d*e*k - g*k^2 - d^2*l"),
    ("F8", "g*j*m - 2*e*f*j + e^2*k + 2*d*f*k - h*k^2 + h*j*l - g*k*l - d^2*m"),
];

/// The 2x2 minors of the two coefficient rows of `y phi` and `w phi`.
const G_DEFS: &[(&str, &str)] = &[
    ("G0", "f*g - e*h"),
    ("G1", "g*h - e*i"),
    ("G2", "h^2 - f*i"),
    ("G3", "g*k - d*e"),
    ("G4", "h*k - d*f"),
    ("G5", "i*k - d*h"),
    ("G6", "g*l - e^2"),
    ("G7", "h*l - e*f"),
    ("G8", "i*l - e*h"),
    ("G9", "d*l - e*k"),
    ("G10", "g*m - e*f"),
    ("G11", "h*m - f^2"),
    ("G12", "i*m - f*h"),
    ("G13", "d*m - f*k"),
    ("G14", "e*m - f*l"),
];

const I0_DEF: &[(&str, &str)] = &[(
    "I0",
    "-a*f^2*g - d^2*g*k - a*d*h*k + d*k*m^2 + 2*d*f*g*n + d*h*n^2 - 2*d*m*n*p + a*d*p^2",
)];

/// The symmetric matrix of the square-times-linear family without `g`.
const M4: &[&[&str]] = &[
    &["a", "d", "m", "n"],
    &["d", "0", "e", "f"],
    &["m", "e", "h", "p"],
    &["n", "f", "p", "k"],
];

const M3: &[&[&str]] = &[&["b", "d", "e"], &["d", "g", "h"], &["e", "h", "i"]];

fn define_all(ctx: &mut Ctx, defs: &[(&str, &str)]) -> Result<()> {
    for (n, s) in defs {
        ctx.define(n, s)?;
    }
    Ok(())
}

fn gamma_check(ctx: &mut Ctx, form: &Form, x: &str, expected: &str) -> Checks {
    let phi = ctx.phi(form.template, form.d)?;
    let xx = ctx.primal(x, form.d)?;
    Ok(vec![(gamma::gamma_coordinate(&phi, &xx)?, ctx.scalar(expected)?)])
}

/// `Gamma(X (x) x_1 /\ ... /\ x_d)` for generic `phi` through the composite
/// definition, against a printed sum of wedges `c * /\_k (l_a l_b phi)`.
fn expansion(ctx: &mut Ctx, d: usize, x: &str, terms: &[(i64, &[(usize, usize)])]) -> Checks {
    let phi = ctx.generic_phi(d)?;
    let dom = ctx.domain().clone();
    let omega = ExtElem::top(ExtSpace::Primal, d, &dom);
    let lhs = gamma::gamma_eval(&phi, &ctx.primal(x, d)?, &omega)?.top_coordinate()?;
    let row = |a: usize, b: usize| -> Result<Vec<Scalar>> {
        let u = SymElem::variable(d, a - 1, &dom).sym_mul(&SymElem::variable(d, b - 1, &dom))?;
        u.contract(&phi)?.linear_coeffs()
    };
    let mut rhs = dom.zero();
    for (c, pairs) in terms {
        let rows: Vec<Vec<Scalar>> = pairs.iter().map(|&(a, b)| row(a, b)).collect::<Result<_>>()?;
        let w = ExtElem::wedge_vectors(ExtSpace::Dual, d, &dom, &rows)?.top_coordinate()?;
        rhs = rhs + w * dom.from_i64(*c);
    }
    Ok(vec![(lhs, rhs)])
}

fn poly(ctx: &mut Ctx, defs: &[&[(&str, &str)]], lhs: &str, rhs: &str) -> Checks {
    for d in defs {
        define_all(ctx, d)?;
    }
    Ok(vec![(ctx.scalar(lhs)?, ctx.scalar(rhs)?)])
}

fn det_of(ctx: &Ctx, rows: &[&[&str]]) -> Result<Scalar> {
    ctx.det(&ctx.matrix(rows)?)
}

/// `Y = [M | J]` with `J` the antidiagonal identity.
fn bordered(ctx: &Ctx, m: &[&[&str]]) -> Result<Matrix> {
    let n = m.len();
    let dom = ctx.domain().clone();
    let mut y = ctx.matrix(m)?;
    for (i, row) in y.iter_mut().enumerate() {
        for j in 0..n {
            row.push(if i + j == n - 1 { dom.one() } else { dom.zero() });
        }
    }
    Ok(y)
}

fn plucker(ctx: &mut Ctx, y: Matrix, a: &[usize], b: &[usize]) -> Checks {
    let dom = ctx.domain().clone();
    Ok(vec![(plucker_sum(&dom, &y, a, b, PluckerConvention::Alternating)?, dom.zero())])
}

/// `(det M[2;j])^2 = det M[j;j] det M[2;2] - det M[2,j;2,j] det M`.
fn minor_square(ctx: &mut Ctx, j: usize) -> Checks {
    let m = ctx.matrix(M4)?;
    let det = |a: &Matrix| ctx.det(a);
    let lhs = det(&minor(&m, &[2], &[j]))?.pow(2);
    let (lo, hi) = if j < 2 { (j, 2) } else { (2, j) };
    let rhs = det(&minor(&m, &[j], &[j]))? * det(&minor(&m, &[2], &[2]))?
        - det(&minor(&m, &[lo, hi], &[lo, hi]))? * det(&m)?;
    Ok(vec![(lhs, rhs)])
}

macro_rules! gamma_cases {
    ($out:ident, $form:ident, zero: $zero:tt, { $($id:literal : $desc:literal, $x:literal => $exp:literal $(, defs $defs:ident)?;)* }) => {
        $(
            $out.push(IdentityCase {
                id: $id,
                family: Family::GammaFormula,
                description: $desc,
                params: $form.params,
                zero: &$zero,
                build: {
                    fn b(ctx: &mut Ctx) -> Checks {
                        $(define_all(ctx, $defs)?;)?
                        gamma_check(ctx, &$form, $x, $exp)
                    }
                    b
                },
            });
        )*
    };
}

macro_rules! expansion_cases {
    ($out:ident, { $($id:literal : $desc:literal, $d:literal, $params:ident, $x:literal => [$(($c:literal, [$(($a:literal, $b:literal)),*])),*];)* }) => {
        $(
            $out.push(IdentityCase {
                id: $id,
                family: Family::GammaFormula,
                description: $desc,
                params: $params,
                zero: &[],
                build: {
                    fn b(ctx: &mut Ctx) -> Checks {
                        expansion(ctx, $d, $x, &[$(($c, &[$(($a, $b)),*])),*])
                    }
                    b
                },
            });
        )*
    };
}

macro_rules! poly_cases {
    ($out:ident, $family:expr, $params:literal, defs $defs:tt, { $($id:literal : $desc:literal, $lhs:literal = $rhs:literal;)* }) => {
        $(
            $out.push(IdentityCase {
                id: $id,
                family: $family,
                description: $desc,
                params: $params,
                zero: &[],
                build: {
                    fn b(ctx: &mut Ctx) -> Checks {
                        poly(ctx, &$defs, $lhs, $rhs)
                    }
                    b
                },
            });
        )*
    };
}

macro_rules! custom_case {
    ($out:ident, $id:literal, $family:expr, $desc:literal, $params:expr, |$ctx:ident| $body:block) => {
        custom_case!($out, $id, $family, $desc, $params, zero: [], |$ctx| $body);
    };
    ($out:ident, $id:literal, $family:expr, $desc:literal, $params:expr, zero: [$($z:expr),*], |$ctx:ident| $body:block) => {
        $out.push(IdentityCase {
            id: $id,
            family: $family,
            description: $desc,
            params: $params,
            zero: &[$($z),*],
            build: {
                fn b($ctx: &mut Ctx) -> Checks $body
                b
            },
        });
    };
}

fn build() -> Vec<IdentityCase> {
    let mut out = Vec::new();

    expansion_cases!(out, {
        "EXPAND_D3_CUBE": "three variables, l1^(3)", 3, GENERIC3, "x^(3)" =>
            [(1, [(1, 1), (1, 2), (1, 3)])];
        "EXPAND_D3_SQUARE_LINEAR": "three variables, l1^(2) l2", 3, GENERIC3, "x^(2)*y" =>
            [(1, [(1, 1), (2, 2), (1, 3)]), (1, [(1, 1), (1, 2), (2, 3)])];
        "EXPAND_D3_TRIPLE": "three variables, l1 l2 l3", 3, GENERIC3, "x*y*z" =>
            [(1, [(1, 1), (2, 2), (3, 3)]), (2, [(1, 2), (2, 3), (1, 3)])];
        "EXPAND_D4_FOURTH": "four variables, l1^(4)", 4, GENERIC4, "x^(4)" =>
            [(1, [(1, 1), (1, 2), (1, 3), (1, 4)])];
        "EXPAND_D4_CUBE_LINEAR": "four variables, l1^(3) l2", 4, GENERIC4, "x^(3)*y" =>
            [(1, [(1, 1), (2, 2), (1, 3), (1, 4)]),
             (1, [(1, 1), (1, 2), (2, 3), (1, 4)]),
             (1, [(1, 1), (1, 2), (1, 3), (2, 4)])];
        "EXPAND_D4_TWO_SQUARES": "four variables, l1^(2) l2^(2)", 4, GENERIC4, "x^(2)*y^(2)" =>
            [(1, [(1, 1), (1, 2), (2, 3), (2, 4)]),
             (1, [(1, 1), (2, 2), (1, 3), (2, 4)]),
             (1, [(1, 1), (2, 2), (2, 3), (1, 4)]),
             (1, [(1, 2), (2, 2), (1, 3), (1, 4)])];
        "EXPAND_D4_SQUARE_TWO_LINEAR": "four variables, l1^(2) l2 l3", 4, GENERIC4, "x^(2)*y*z" =>
            [(1, [(1, 1), (1, 2), (2, 3), (3, 4)]),
             (1, [(1, 1), (1, 2), (3, 3), (2, 4)]),
             (1, [(1, 1), (2, 2), (1, 3), (3, 4)]),
             (1, [(1, 1), (2, 3), (1, 3), (2, 4)]),
             (1, [(1, 1), (2, 2), (3, 3), (1, 4)]),
             (2, [(1, 2), (2, 3), (1, 3), (1, 4)])];
        "EXPAND_D4_SQUAREFREE": "four variables, l1 l2 l3 l4", 4, GENERIC4, "x*y*z*w" =>
            [(1, [(1, 1), (2, 2), (3, 3), (4, 4)]),
             (2, [(1, 1), (2, 3), (3, 4), (2, 4)]),
             (2, [(1, 3), (2, 2), (3, 4), (1, 4)]),
             (2, [(1, 2), (2, 4), (3, 3), (1, 4)]),
             (2, [(1, 2), (2, 3), (1, 3), (4, 4)])];
    });

    gamma_cases!(out, CUBIC_R2, zero: [], {
        "CUBIC_R2_X3Y": "rank-two cubic, x^(3) y", "x^(3)*y" => "i*(a*c - b^2)";
        "CUBIC_R2_X3Z": "rank-two cubic, x^(3) z", "x^(3)*z" => "g*(a*c - b^2)";
        "CUBIC_R2_X3W": "rank-two cubic, x^(3) w", "x^(3)*w" => "h*(a*c - b^2)";
    });
    gamma_cases!(out, CUBIC_R2, zero: ["g", "h", "i"], {
        "CUBIC_R2_X2Z2": "rank-two cubic with g = h = i = 0, x^(2) z^(2)", "x^(2)*z^(2)" => "-c*d^2 + 2*b*d*e - a*e^2";
        "CUBIC_R2_Z4": "rank-two cubic with g = h = i = 0, z^(4)", "z^(4)" => "(a*e - b*d)^2";
    });
    gamma_cases!(out, CUBIC_R2, zero: ["d", "g", "h", "i"], {
        "CUBIC_R2_RED_XZ3": "reduced rank-two cubic, x z^(3)", "x*z^(3)" => "-e^2*j";
        "CUBIC_R2_RED_XYZW": "reduced rank-two cubic, x y z w", "x*y*z*w" => "2*e^3";
        "CUBIC_R2_RED_XZ2W": "reduced rank-two cubic, x z^(2) w", "x*z^(2)*w" => "e^2*k - 2*e*f*j";
        "CUBIC_R2_RED_X2W2": "reduced rank-two cubic, x^(2) w^(2)", "x^(2)*w^(2)" => "-c*e^2 + 2*b*e*f - a*f^2";
        "CUBIC_R2_RED_XYW2": "reduced rank-two cubic, x y w^(2)", "x*y*w^(2)" => "e^2*f";
        "CUBIC_R2_RED_XZW2": "reduced rank-two cubic, x z w^(2)", "x*z*w^(2)" => "e^2*l - j*f^2";
        "CUBIC_R2_RED_Z2W2": "reduced rank-two cubic, z^(2) w^(2)", "z^(2)*w^(2)" => "-2*a*c*e^2 + 2*a*b*e*f + a^2*f^2";
        "CUBIC_R2_RED_XW3": "reduced rank-two cubic, x w^(3)", "x*w^(3)" => "-f^2*k + 2*e*f*l - e^2*m";
        "CUBIC_R2_RED_W4": "reduced rank-two cubic, w^(4)", "w^(4)" => "(b*f - c*e)^2";
    });
    gamma_cases!(out, CUBIC_R1, zero: [], {
        "CUBIC_R1_X2Y2": "rank-one cubic, x^(2) y^(2)", "x^(2)*y^(2)" => "a*F0", defs F_DEFS;
        "CUBIC_R1_X2YZ": "rank-one cubic, x^(2) y z", "x^(2)*y*z" => "a*F1", defs F_DEFS;
        "CUBIC_R1_X2Z2": "rank-one cubic, x^(2) z^(2)", "x^(2)*z^(2)" => "a*F2", defs F_DEFS;
        "CUBIC_R1_X2YW": "rank-one cubic, x^(2) y w", "x^(2)*y*w" => "a*F3", defs F_DEFS;
        "CUBIC_R1_X2ZW": "rank-one cubic, x^(2) z w", "x^(2)*z*w" => "a*F4", defs F_DEFS;
        "CUBIC_R1_X2W2": "rank-one cubic, x^(2) w^(2)", "x^(2)*w^(2)" => "a*F5", defs F_DEFS;
        "CUBIC_R1_XYZ2": "rank-one cubic, x y z^(2)", "x*y*z^(2)" => "F6", defs F_DEFS;
        "CUBIC_R1_XZ3": "rank-one cubic, x z^(3)", "x*z^(3)" => "F7", defs F_DEFS;
        "CUBIC_R1_XZ2W": "rank-one cubic, x z^(2) w", "x*z^(2)*w" => "F8", defs F_DEFS;
    });
    custom_case!(out, "CUBIC_R3_X4", Family::GammaFormula,
        "rank-three cubic, x^(4) is t x* /\\ y phi20 /\\ z phi20 /\\ w phi20", CUBIC_R3.params, |ctx| {
        let phi = ctx.phi(CUBIC_R3.template, 4)?;
        let dom = ctx.domain().clone();
        let lhs = gamma::gamma_coordinate(&phi, &ctx.primal("x^(4)", 4)?)?;
        let phi20 = DividedElem::parse_with_degree(
            "a*y^(2) + b*y*z + c*y*w + d*z^(2) + e*z*w + f*w^(2)", 4, 2, Space::Dual, &ctx.ring)?;
        let phi20 = ctx.specialize(&phi20)?;
        let mut rows = vec![vec![dom.one(), dom.zero(), dom.zero(), dom.zero()]];
        for v in 1..4 {
            rows.push(SymElem::variable(4, v, &dom).contract(&phi20)?.linear_coeffs()?);
        }
        let wedge = ExtElem::wedge_vectors(ExtSpace::Dual, 4, &dom, &rows)?.top_coordinate()?;
        Ok(vec![(lhs, ctx.scalar("t")? * wedge)])
    });
    gamma_cases!(out, SQLIN_OPEN, zero: [], {
        "SQLIN_OPEN_X4": "square-times-linear before normalizing, x^(4)", "x^(4)" => "b^2 - a*c";
    });
    gamma_cases!(out, SQLIN_SETTLED, zero: [], {
        "SQLIN_SETTLED_X2W2": "square-times-linear after completing the square, x^(2) w^(2)", "x^(2)*w^(2)" => "l^2";
    });
    gamma_cases!(out, SQLIN_G, zero: [], {
        "SQLIN_G_X3Y": "square-times-linear with g, x^(3) y", "x^(3)*y" => "a*g*(n^2 - a*k)";
        "SQLIN_G_X2Z2": "square-times-linear with g, x^(2) z^(2)", "x^(2)*z^(2)" => "(a*i - g*n)^2";
        "SQLIN_G_Z4": "square-times-linear with g, z^(4)", "z^(4)" => "(i*m - g*p)^2";
        "SQLIN_G_Z2W2": "square-times-linear with g, z^(2) w^(2)", "z^(2)*w^(2)" => "(g*k - i*n)^2";
        "SQLIN_G_XY3": "square-times-linear with g, x y^(3)", "x*y^(3)" => "I0", defs I0_DEF;
    });
    gamma_cases!(out, SQLIN_NO_G, zero: [], {
        "SQLIN_NOG_X2Z2": "square-times-linear without g, x^(2) z^(2)", "x^(2)*z^(2)" => "a^2*i^2";
    });
    custom_case!(out, "SQLIN_NOG_X2Y2", Family::GammaFormula,
        "square-times-linear without g, i = 0, x^(2) y^(2) is -a det M[2;2]", SQLIN_NO_G.params, zero: ["i"], |ctx| {
        let phi = ctx.phi(SQLIN_NO_G.template, 4)?;
        let m = ctx.matrix(M4)?;
        let rhs = -(ctx.scalar("a")? * ctx.det(&minor(&m, &[2], &[2]))?);
        Ok(vec![(gamma::gamma_coordinate(&phi, &ctx.primal("x^(2)*y^(2)", 4)?)?, rhs)])
    });
    custom_case!(out, "SQLIN_NOG_Y4", Family::GammaFormula,
        "square-times-linear without g, i = 0, y^(4) is det M", SQLIN_NO_G.params, zero: ["i"], |ctx| {
        let phi = ctx.phi(SQLIN_NO_G.template, 4)?;
        let m = ctx.matrix(M4)?;
        Ok(vec![(gamma::gamma_coordinate(&phi, &ctx.primal("y^(4)", 4)?)?, ctx.det(&m)?)])
    });
    gamma_cases!(out, TERNARY_CUBIC, zero: ["e", "f"], {
        "TERN_CUBIC_Y3": "ternary cubic with e = f = 0, y^(3)", "y^(3)" => "-d^2*i";
        "TERN_CUBIC_X2Z": "ternary cubic with e = f = 0, x^(2) z", "x^(2)*z" => "a*d*j";
        "TERN_CUBIC_XY2": "ternary cubic with e = f = 0, x y^(2)", "x*y^(2)" => "a*(g*i - h^2)";
        "TERN_CUBIC_XZ2": "ternary cubic with e = f = 0, x z^(2)", "x*z^(2)" => "a*(h*j - i^2)";
        "TERN_CUBIC_XYZ": "ternary cubic with e = f = 0, x y z", "x*y*z" => "a*(g*j - h*i)";
    });
    gamma_cases!(out, TERNARY_SQLIN, zero: [], {
        "TERN_SQLIN_X3": "ternary square-times-linear, x^(3)", "x^(3)" => "-b^2*f";
        "TERN_SQLIN_X2Z": "ternary square-times-linear, x^(2) z", "x^(2)*z" => "-b^2*j";
    });
    gamma_cases!(out, TERNARY_SQLIN, zero: ["f"], {
        "TERN_SQLIN_X2Y": "ternary square-times-linear with f = 0, x^(2) y", "x^(2)*y" => "b*(e^2 - b*i)";
    });
    custom_case!(out, "TERN_SQLIN_Y3", Family::GammaFormula,
        "ternary square-times-linear with f = 0, y^(3) is det M", TERNARY_SQLIN.params, zero: ["f"], |ctx| {
        let phi = ctx.phi(TERNARY_SQLIN.template, 3)?;
        Ok(vec![(gamma::gamma_coordinate(&phi, &ctx.primal("y^(3)", 3)?)?, det_of(ctx, M3)?)])
    });

    poly_cases!(out, Family::Syzygy, "defghijklm", defs [F_DEFS, G_DEFS], {
        "G0_SQ": "G0^2 in terms of F", "G0^2" = "-g*l*F0 + f*g*F1 - h^2*F2";
        "G1_SQ": "G1^2 in terms of F", "G1^2" = "-g^2*F0 + g*i*F1 - i^2*F2";
        "G2_LIN": "G2 in terms of F", "G2" = "-F0";
        "G3_SQ": "G3^2 in terms of F", "G3^2" = "-d^2*F2 - g*(F7 - j*F2)";
        "G4_SQ": "G4^2 in terms of F", "G4^2" = "-k^2*F0 + f*(-d*F2 + j*F1 - F6)";
        "G5_SQ": "G5^2 in terms of F", "G5^2" = "-d^2*F0 + i*(-d*F2 + j*F1 - F6)";
        "G6_LIN": "G6 in terms of F", "G6" = "F2";
        "G7_SQ": "G7^2 in terms of F", "G7^2" = "-f^2*F2 + h*l*F4 - g*l*F5";
        "G8_SQ": "G8^2 in terms of F", "G8^2" = "-g*l*F0 + i*l*F1 - h^2*F2";
        "G9_SQ": "G9^2 in terms of F", "G9^2" = "-k^2*F2 - l*(F7 - j*F2)";
        "G10_SQ": "G10^2 in terms of F", "G10^2" = "-f^2*F2 + g*m*F4 - g*l*F5";
        "G11_LIN": "G11 in terms of F", "G11" = "F5";
        "G12_LIN": "G12 in terms of F", "G12" = "F3";
        "G13_SQ": "G13^2 in terms of F", "G13^2" = "-k^2*F5 - m*(F8 - j*F4 + k*F2)";
        "G14_SQ": "G14^2 in terms of F", "G14^2" = "-m^2*F2 + l*m*F4 - l^2*F5";
    });
    poly_cases!(out, Family::Syzygy, "abcde", defs [], {
        "CUBIC_R2_D_ELIM": "eliminating d in the rank-two cubic family",
            "a*(-c*d^2 + 2*b*d*e - a*e^2) + (a*e - b*d)^2" = "d^2*(b^2 - a*c)";
    });
    poly_cases!(out, Family::Syzygy, "adfghikmnp", defs [I0_DEF], {
        "SQLIN_G_DK_FN": "a g^2 (dk - fn)^2 as a combination of I0 and three quadrics",
            "-g*n^2*I0 + (-d^2*g^2*k + 2*d*f*g^2*n - d*i*m^2*n + d*g*h*n^2)*(n^2 - a*k) \
             + (-d*k*m^2*n + d*m*n^2*p)*(a*i - g*n) + (d*m*n^3 - a*d*n^2*p)*(i*m - g*p)"
            = "a*g^2*(d*k - f*n)^2";
    });
    custom_case!(out, "MINOR_SQUARE_1", Family::Syzygy,
        "(det M[2;1])^2 = det M[1;1] det M[2;2] - det M[1,2;1,2] det M", "adefhkmnp", |ctx| {
        minor_square(ctx, 1)
    });
    custom_case!(out, "MINOR_SQUARE_3", Family::Syzygy,
        "(det M[2;3])^2 = det M[3;3] det M[2;2] - det M[2,3;2,3] det M", "adefhkmnp", |ctx| {
        minor_square(ctx, 3)
    });
    custom_case!(out, "MINOR_SQUARE_4", Family::Syzygy,
        "(det M[2;4])^2 = det M[4;4] det M[2;2] - det M[2,4;2,4] det M", "adefhkmnp", |ctx| {
        minor_square(ctx, 4)
    });

    custom_case!(out, "PLUCKER_2X4", Family::Plucker,
        "three-term relation of a generic 2 x 4 matrix", "abcdefgh", |ctx| {
        let y = ctx.matrix(&[&["a", "b", "c", "d"], &["e", "f", "g", "h"]])?;
        plucker(ctx, y, &[1], &[2, 3, 4])
    });
    custom_case!(out, "PLUCKER_BORDERED4_1", Family::Plucker,
        "[M | J], a = {2,3,4}, b = {1,3,4,7,8}", "adefhkmnp", |ctx| {
        let y = bordered(ctx, M4)?;
        plucker(ctx, y, &[2, 3, 4], &[1, 3, 4, 7, 8])
    });
    custom_case!(out, "PLUCKER_BORDERED4_2", Family::Plucker,
        "[M | J], a = {1,2,4}, b = {1,3,4,6,7}", "adefhkmnp", |ctx| {
        let y = bordered(ctx, M4)?;
        plucker(ctx, y, &[1, 2, 4], &[1, 3, 4, 6, 7])
    });
    custom_case!(out, "PLUCKER_BORDERED4_3", Family::Plucker,
        "[M | J], a = {1,2,3}, b = {1,3,4,5,7}", "adefhkmnp", |ctx| {
        let y = bordered(ctx, M4)?;
        plucker(ctx, y, &[1, 2, 3], &[1, 3, 4, 5, 7])
    });
    custom_case!(out, "PLUCKER_BORDERED3_1", Family::Plucker,
        "bordered ternary matrix, a = {2,3}, b = {1,3,5,6}", "bdeghi", |ctx| {
        let y = bordered(ctx, M3)?;
        plucker(ctx, y, &[2, 3], &[1, 3, 5, 6])
    });
    custom_case!(out, "PLUCKER_BORDERED3_2", Family::Plucker,
        "bordered ternary matrix, a = {1,2}, b = {1,3,4,5}", "bdeghi", |ctx| {
        let y = bordered(ctx, M3)?;
        plucker(ctx, y, &[1, 2], &[1, 3, 4, 5])
    });

    poly_cases!(out, Family::Factorization, "abcde", defs [], {
        "STEP_R2_X2Z2": "collecting the two wedges for x^(2) z^(2)",
            "e*(b*d - a*e) - d*(c*d - e*b)" = "-c*d^2 + 2*b*d*e - a*e^2";
    });
    poly_cases!(out, Family::Factorization, "abcefjklm", defs [], {
        "STEP_R2_X2W2": "collecting the two wedges for x^(2) w^(2)",
            "f*(e*b - f*a) - e*(e*c - b*f)" = "-c*e^2 + 2*b*e*f - a*f^2";
        "STEP_R2_XZW2": "collecting the two wedges for x z w^(2)",
            "e*(e*l - f*k) + f*(e*k - j*f)" = "e^2*l - j*f^2";
        "STEP_R2_Z2W2": "collecting the four wedges for z^(2) w^(2)",
            "a*e*(b*f - e*c) + a*f*(a*f - b*e) + a*f*b*e + a*e*(b*f - c*e)" = "2*a*b*e*f - 2*a*c*e^2 + a^2*f^2";
    });
    custom_case!(out, "STEP_R2_XW3", Family::Factorization,
        "the 3 x 3 determinant for x w^(3)", "efklm", |ctx| {
        let lhs = det_of(ctx, &[&["0", "e", "f"], &["e", "k", "l"], &["f", "l", "m"]])?;
        Ok(vec![(lhs, ctx.scalar("-f^2*k + 2*e*f*l - e^2*m")?)])
    });
    poly_cases!(out, Family::Factorization, "defghijklm", defs [F_DEFS], {
        "STEP_R1_X2YZ": "collecting the two wedges for x^(2) y z, divided by a",
            "(i*l - e*h) + (g*f - e*h)" = "F1";
        "STEP_R1_X2ZW": "collecting the two wedges for x^(2) z w, divided by a",
            "(g*m - e*f) + (h*l - e*f)" = "F4";
    });
    custom_case!(out, "STEP_R1_DETS", Family::Factorization,
        "the determinant sums for x y z^(2), x z^(3), x z^(2) w", "defghijklm", |ctx| {
        define_all(ctx, F_DEFS)?;
        let f6 = det_of(ctx, &[&["i", "g", "h"], &["d", "j", "k"], &["e", "k", "l"]])?
            + det_of(ctx, &[&["g", "d", "e"], &["d", "j", "k"], &["h", "e", "f"]])?;
        let f7 = det_of(ctx, &[&["g", "d", "e"], &["d", "j", "k"], &["e", "k", "l"]])?;
        let f8 = det_of(ctx, &[&["h", "e", "f"], &["d", "j", "k"], &["e", "k", "l"]])?
            + det_of(ctx, &[&["g", "d", "e"], &["d", "j", "k"], &["f", "l", "m"]])?;
        Ok(vec![(f6, ctx.scalar("F6")?), (f7, ctx.scalar("F7")?), (f8, ctx.scalar("F8")?)])
    });
    poly_cases!(out, Family::Factorization, "agikmnp", defs [], {
        "STEP_G_X3Y": "sign normalization for x^(3) y", "-a*g*(a*k - n^2)" = "a*g*(n^2 - a*k)";
        "STEP_G_X2Z2": "collecting the two wedges for x^(2) z^(2)",
            "a*i*(a*i - n*g) - g*n*(a*i - g*n)" = "(a*i - n*g)^2";
        "STEP_G_Z2W2": "collecting the two wedges for z^(2) w^(2)",
            "-k*g*(n*i - g*k) + n*i*(n*i - g*k)" = "(n*i - g*k)^2";
    });
    custom_case!(out, "STEP_G_XY3", Family::Factorization,
        "the three determinants for x y^(3)", "adefghkmnp", |ctx| {
        define_all(ctx, I0_DEF)?;
        let lhs = -(ctx.scalar("a")? * det_of(ctx, &[&["d", "e", "f"], &["m", "h", "p"], &["n", "p", "k"]])?)
            + det_of(ctx, &[&["a", "d", "m", "n"], &["d", "0", "e", "f"], &["0", "m", "g", "0"], &["n", "f", "p", "k"]])?
            + ctx.scalar("n")? * det_of(ctx, &[&["a", "m", "n"], &["d", "e", "f"], &["m", "h", "p"]])?;
        Ok(vec![(lhs, ctx.scalar("I0")?)])
    });
    poly_cases!(out, Family::Factorization, "befj", defs [], {
        "STEP_TERN_X2Z": "collecting the two wedges for x^(2) z",
            "-b*e*f - b*(b*j - e*f)" = "-b^2*j";
    });
    custom_case!(out, "STEP_BORDERED3_1", Family::Factorization,
        "expansion of the first bordered ternary relation", "bdeghi", |ctx| {
        let dm = det_of(ctx, M3)?;
        ctx.define_value("detM", dm);
        let lhs = ctx.scalar("(d*i - e*h)*(d*i - h*e) + i*detM - (g*i - h^2)*(b*i - e^2)")?;
        Ok(vec![(lhs, ctx.domain().zero())])
    });
    custom_case!(out, "STEP_BORDERED3_2", Family::Factorization,
        "expansion of the second bordered ternary relation", "bdeghi", |ctx| {
        let dm = det_of(ctx, M3)?;
        ctx.define_value("detM", dm);
        let lhs = ctx.scalar("(b*h - d*e)*(b*h - e*d) + b*detM - (b*g - d^2)*(b*i - e^2)")?;
        Ok(vec![(lhs, ctx.domain().zero())])
    });

    out
}

/// Every registered case, in a fixed order.
pub fn registry() -> &'static [IdentityCase] {
    static CELL: OnceLock<Vec<IdentityCase>> = OnceLock::new();
    CELL.get_or_init(build)
}
