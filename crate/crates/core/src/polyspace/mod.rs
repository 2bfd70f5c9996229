//! Graded pieces of `Sym U`, `D U` and `D U*` on a based space, with
//! contraction, divided powers, comultiplication and basis changes.

mod basis;
mod elem;
mod monomial;
mod text;

pub use basis::{substitute, BasisAction, BasisChange};
pub use elem::{distinct_words, DividedElem, Space, SymElem, Terms};
pub use monomial::{binomial, monomial_count, monomials, variable_names, ExponentTuple};
pub use text::{DividedJson, TermJson};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::Domain;
    use crate::linalg;

    fn dual(s: &str, dom: &Domain) -> DividedElem {
        DividedElem::parse(s, 4, Space::Dual, dom).unwrap()
    }

    fn sym(s: &str, dom: &Domain) -> SymElem {
        SymElem::parse(s, 4, dom).unwrap()
    }

    #[test]
    fn sym_products() {
        let q = Domain::Rationals;
        assert_eq!(sym("x", &q).sym_mul(&sym("y", &q)).unwrap(), sym("x*y", &q));
        assert_eq!(
            sym("x+y", &q).sym_mul(&sym("x-y", &q)).unwrap(),
            sym("x^2 - y^2", &q)
        );
        let p = sym("x^2", &q).sym_mul(&sym("z", &q)).unwrap();
        assert_eq!(p.terms().len(), 1);
        assert_eq!(p.coeff_of(&[2, 0, 1, 0]), q.one());
    }

    #[test]
    fn contraction_rules() {
        let q = Domain::Rationals;
        let phi = dual("x^(2)*y", &q);
        assert_eq!(sym("x", &q).contract(&phi).unwrap(), dual("x*y", &q));
        assert!(sym("z", &q).contract(&phi).unwrap().is_zero());
        let psi = dual("x^(3) + y*z*w", &q);
        assert!(sym("x*y", &q).contract(&psi).unwrap().is_zero());
        assert_eq!(sym("x^3", &q).pair(&psi).unwrap(), q.one());
        assert!(sym("x^2*y^2", &q).contract(&psi).is_err());
    }

    #[test]
    fn divided_powers_of_linear_forms() {
        let f2 = Domain::PrimeField(2);
        let l = dual("x + y", &f2);
        let sq = l.divided_power(2).unwrap();
        assert_eq!(sq, dual("x^(2) + x*y + y^(2)", &f2));
        assert_eq!(sq.coeff_of(&[1, 1, 0, 0]), f2.one());
        assert_eq!(l.divided_power(0).unwrap(), DividedElem::one(4, Space::Dual, &f2));
        // text form of a divided power of a linear form
        assert_eq!(dual("(x+y)^(2)", &f2), sq);
    }

    #[test]
    fn comultiplication_words() {
        let z = Domain::Integers;
        let x = DividedElem::parse("x^(2)*y", 4, Space::Primal, &z).unwrap();
        let words: Vec<Vec<usize>> = x.comultiply().unwrap().into_iter().map(|(_, w)| w).collect();
        assert_eq!(words, vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
        let x2 = DividedElem::parse("x^(2)", 4, Space::Primal, &z).unwrap();
        assert_eq!(x2.comultiply().unwrap().len(), 1);
        let xyz = DividedElem::parse("x*y*z", 4, Space::Primal, &z).unwrap();
        let w = xyz.comultiply().unwrap();
        assert_eq!(w.len(), 6);
        assert!(w.iter().all(|(c, _)| c.is_one()));
        assert!(dual("x", &z).comultiply().is_err());
    }

    #[test]
    fn text_formats() {
        let f = Domain::PrimeField(7);
        let phi = dual("3*x^(3) + y*z*w - 2*x*y^(2)", &f);
        assert_eq!(phi.to_string(), "3*x^(3) + 5*x*y^(2) + y*z*w");
        assert_eq!(dual(&phi.to_string(), &f), phi);
        // juxtaposed letters are divided products
        assert_eq!(dual("yzw", &f), dual("y*z*w", &f));
        assert_eq!(dual("x*x", &f), dual("2*x^(2)", &f));
        let r = Domain::param_ring(&["a", "b", "c"]).unwrap();
        let g = dual("a*z + b*w", &r).divided_mul(&dual("(ac - b^2)*x", &r)).unwrap();
        assert_eq!(dual(&g.to_string(), &r), g);
        assert!(DividedElem::parse("x + y^(2)", 4, Space::Dual, &f).is_err());
        assert!(DividedElem::parse("0", 4, Space::Dual, &f).is_err());
        assert!(DividedElem::parse_with_degree("0", 4, 3, Space::Dual, &f).unwrap().is_zero());
    }

    #[test]
    fn json_round_trip() {
        let f2 = Domain::PrimeField(2);
        let phi = dual("x^(3) + y*z*w", &f2);
        let s = phi.to_json_string();
        assert_eq!(
            s,
            r#"{"d":4,"degree":3,"space":"dual","domain":"GF(2)","terms":[{"e":[3,0,0,0],"c":"1"},{"e":[0,1,1,1],"c":"1"}]}"#
        );
        assert_eq!(DividedElem::from_json_str(&s).unwrap(), phi);
    }

    #[test]
    fn basis_changes() {
        let q = Domain::Rationals;
        let phi = dual("x^(2)*y", &q);
        assert_eq!(BasisChange::identity(&q, 4).apply_divided(&phi).unwrap(), phi);
        let swap = BasisChange::permutation(&q, &[1, 0, 2, 3]).unwrap();
        assert_eq!(swap.apply_divided(&phi).unwrap(), dual("y^(2)*x", &q));

        // old x* = X* - y*: rewriting x^(3) gives (X* - y*)^(3)
        let mut t = linalg::identity(&q, 4);
        t[0][1] = q.from_i64(-1);
        let m = BasisChange::from_dual_substitution(&q, t).unwrap();
        let got = m.apply_divided(&dual("x^(3)", &q)).unwrap();
        assert_eq!(got, dual("(x - y)^(3)", &q));
        assert_eq!(got, dual("x^(3) - x^(2)*y + x*y^(2) - y^(3)", &q));

        // pairing is preserved
        let u = sym("x*z + 2*y^2", &q);
        let psi = dual("x^(3) + 2*x*y*z + w^(3) - y^(2)*z", &q);
        let n = BasisChange::new(
            &q,
            linalg::from_strs(
                &q,
                &[
                    &["1", "2", "0", "0"],
                    &["0", "1", "3", "0"],
                    &["1", "0", "1", "0"],
                    &["0", "0", "0", "2"],
                ],
            )
            .unwrap(),
        )
        .unwrap();
        let lhs = n.apply_sym(&u).unwrap().contract(&n.apply_divided(&psi).unwrap()).unwrap();
        let rhs = n.apply_divided(&u.contract(&psi).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        // functoriality
        let both = n.then(&m).unwrap();
        assert_eq!(
            m.apply_divided(&n.apply_divided(&psi).unwrap()).unwrap(),
            both.apply_divided(&psi).unwrap()
        );
        assert_eq!(
            m.apply_sym(&n.apply_sym(&u).unwrap()).unwrap(),
            both.apply_sym(&u).unwrap()
        );
    }

    #[test]
    fn singular_changes_are_rejected() {
        let q = Domain::Rationals;
        let z = vec![vec![q.zero(); 2]; 2];
        assert!(BasisChange::new(&q, z).is_err());
        assert!(BasisChange::new(&Domain::Integers, linalg::identity(&Domain::Integers, 2)).is_err());
    }
}
