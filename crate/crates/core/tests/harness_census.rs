use std::collections::BTreeSet;

use lefschetz_core::harness::{census, enumerate, exception, orbit, replay, CensusOptions};
use lefschetz_core::par::Mode;
use lefschetz_core::coeffring::Domain;
use lefschetz_core::polyspace::{DividedElem, Space};

fn run(p: u64, d: usize, mode: Mode) -> lefschetz_core::harness::CensusReport {
    let mut opts = CensusOptions::new(p, d);
    opts.mode = mode;
    enumerate(&opts).unwrap()
}

#[test]
fn ternary_binary_census_matches_orbit() {
    let r = run(2, 3, Mode::Sequential);
    assert_eq!(r.total, 1023);
    assert_eq!(r.bins.iter().map(|b| b.count).sum::<u64>(), 1023);
    let o = orbit::orbit(&exception(3).unwrap(), false, Mode::Sequential).unwrap();
    let bin: BTreeSet<u64> = r.gamma_zero_full.iter().copied().collect();
    assert_eq!(bin, o.members);
    assert_eq!(r.exception_orbit_size, Some(o.size));
    assert_eq!(168 % o.size, 0);
    for phi in &r.discrepancies {
        assert!(replay(phi).unwrap().is_discrepancy(3));
    }
}

#[test]
fn ternary_ternary_census_has_no_gamma_zero_full_system() {
    let r = run(3, 3, Mode::Parallel { jobs: 2 });
    assert_eq!(r.total, 59048);
    assert_eq!(r.bins.iter().map(|b| b.count).sum::<u64>(), 59048);
    assert!(r.gamma_zero_full.is_empty());
    assert_eq!(r.exception_orbit_size, None);
}

#[test]
fn census_reports_are_deterministic() {
    let a = run(2, 3, Mode::Sequential);
    let b = run(2, 3, Mode::Parallel { jobs: 3 });
    assert_eq!(a.to_json().to_string(), b.to_json().to_string());
    assert_eq!(a.gamma_zero_full, b.gamma_zero_full);
}

#[test]
fn scalar_multiples_share_a_cell() {
    let k = lefschetz_core::harness::Kernel::new(3, 3);
    let mut v = vec![0u32; k.len()];
    for idx in (1..59049u64).step_by(97) {
        k.decode(idx, &mut v);
        let w: Vec<u32> = v.iter().map(|c| 2 * c % 3).collect();
        assert_eq!(k.classify(&v), k.classify(&w));
    }
}

#[test]
fn discrepancies_use_the_structured_format() {
    let dom = Domain::PrimeField(2);
    let phi = DividedElem::parse("x^(3) + y*z*w", 4, Space::Dual, &dom).unwrap();
    let json = phi.to_json_string();
    assert_eq!(DividedElem::from_json_str(&json).unwrap(), phi);
    let r = census::replay(&phi).unwrap();
    assert!(r.gamma_zero && r.witness.is_none() && !r.is_discrepancy(4));
}

#[test]
fn quaternary_binary_census_matches_exception_orbit() {
    let r = run(2, 4, Mode::Parallel { jobs: 0 });
    assert_eq!(r.total, (1 << 20) - 1);
    assert_eq!(r.bins.iter().map(|b| b.count).sum::<u64>(), r.total);
    let o = orbit::orbit(&exception(4).unwrap(), false, Mode::Parallel { jobs: 0 }).unwrap();
    let bin: BTreeSet<u64> = r.gamma_zero_full.iter().copied().collect();
    assert_eq!(bin, o.members);
    assert_eq!(20160 % o.size, 0);
    assert_eq!(r.without_rational_witness() as usize, r.discrepancies.len());
    for phi in r.discrepancies.iter().step_by(97) {
        assert!(replay(phi).unwrap().is_discrepancy(4));
    }
}
