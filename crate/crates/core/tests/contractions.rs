use movcone_core::linalg::{add, scale};
use movcone_core::scalar::{qvec, rat, ratio};
use movcone_core::{ContractionInfo, LinkedContraction, QVec, Rat, Registry, VarietyData};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const BLOWDOWNS: [&str; 2] = ["blowup-point-p3", "blowup-line-p3"];

fn small_rat() -> impl Strategy<Value = Rat> {
    (-30i64..=30, 1i64..=7).prop_map(|(n, d)| ratio(n, d))
}

fn rat_vec(n: usize) -> impl Strategy<Value = QVec> {
    prop::collection::vec(small_rat(), n)
}

#[test]
fn curve_maps_compose_to_identity() {
    let r = Registry::bundled();
    for name in BLOWDOWNS {
        let x = r.get(name).unwrap();
        let phi = LinkedContraction::new(x, 0, r.get("p3").unwrap()).unwrap();
        let composite = phi.curve_pushforward_matrix().mul(phi.curve_pullback_matrix());
        assert_eq!(composite, movcone_core::Matrix::identity(1));
        assert_eq!(phi.curve_pullback_matrix().column(0), qvec(&[1, 1]));
    }
}

#[test]
fn exceptional_divisors_meet_their_rays_negatively() {
    let r = Registry::bundled();
    for name in r.names() {
        let v = r.get(name).unwrap();
        for ray in v.ne_rays() {
            if let Some(e) = &ray.contraction.exceptional_divisor {
                assert!(v.pair(e, &ray.class).unwrap() < rat(0));
            }
        }
        assert!(v.mori_cone().contains_cone(&v.moving_cone()), "{name}");
    }
}

#[test]
fn fano_test_ignores_ray_scaling() {
    let r = Registry::bundled();
    for name in r.names() {
        let v = r.get(name).unwrap();
        let mut parts = v.parts().clone();
        for (k, ray) in parts.ne_rays.iter_mut().enumerate() {
            ray.class.coords = scale(&ray.class.coords, &ratio(2 * k as i64 + 1, 3));
        }
        let scaled = VarietyData::new(parts).unwrap();
        assert_eq!(scaled.is_fano_numerically(), v.is_fano_numerically());
        assert!(scaled.mori_cone().equals(&v.mori_cone()));
    }
}

fn corrupted(info: &ContractionInfo, pushforward: bool, i: usize, j: usize, delta: &Rat) -> ContractionInfo {
    let mut info = info.clone();
    let target = info.target.as_mut().unwrap();
    let m = if pushforward { &mut target.pushforward } else { &mut target.pullback };
    m[(i, j)] = &m[(i, j)] + delta;
    info
}

#[test]
fn every_single_entry_mutation_is_detected() {
    let r = Registry::bundled();
    let p3 = r.get("p3").unwrap();
    for name in BLOWDOWNS {
        let x = r.get(name).unwrap();
        let ray = &x.ne_rays()[0];
        let link = ray.contraction.target.as_ref().unwrap();
        for (pushforward, m) in [(true, &link.pushforward), (false, &link.pullback)] {
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    for delta in [rat(1), rat(-1), ratio(1, 2)] {
                        let info = corrupted(&ray.contraction, pushforward, i, j, &delta);
                        let phi = LinkedContraction::from_parts(x, &ray.class, &info, p3).unwrap();
                        let mut rng = ChaCha8Rng::seed_from_u64(1);
                        let lemma = phi.check_lemma_rmk();
                        let projection = phi.check_projection_formula(100, &mut rng);
                        assert!(!(lemma && projection), "{name}: entry ({i},{j}) of pushforward={pushforward} +{delta}");
                    }
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn pairing_is_bilinear(d1 in rat_vec(3), d2 in rat_vec(3), c in rat_vec(3), a in small_rat()) {
        let r = Registry::bundled();
        let v = r.get("p1xp1xp1").unwrap();
        let (d1, d2, c) = (v.divisor(d1), v.divisor(d2), v.curve(c));
        let sum = v.divisor(add(&scale(&d1.coords, &a), &d2.coords));
        let lhs = v.pair(&sum, &c).unwrap();
        prop_assert_eq!(lhs, a * v.pair(&d1, &c).unwrap() + v.pair(&d2, &c).unwrap());
    }

    #[test]
    fn numerical_pullback_is_linear(c in small_rat(), c2 in small_rat(), a in small_rat(), which in 0usize..2) {
        let r = Registry::bundled();
        let x = r.get(BLOWDOWNS[which]).unwrap();
        let y = r.get("p3").unwrap();
        let phi = LinkedContraction::new(x, 0, y).unwrap();
        let combined = phi.numerical_pullback(&y.curve(vec![&a * &c + &c2])).unwrap();
        let separate = add(
            &scale(&phi.numerical_pullback(&y.curve(vec![c.clone()])).unwrap().coords, &a),
            &phi.numerical_pullback(&y.curve(vec![c2])).unwrap().coords,
        );
        prop_assert_eq!(&combined.coords, &separate);
        let e = phi.info().exceptional_divisor.clone().unwrap();
        prop_assert_eq!(x.pair(&e, &combined).unwrap(), rat(0));
    }

    #[test]
    fn projection_formula_on_random_classes(d in rat_vec(2), c in small_rat(), seed in any::<u64>()) {
        let r = Registry::bundled();
        let x = r.get("blowup-point-p3").unwrap();
        let y = r.get("p3").unwrap();
        let phi = LinkedContraction::new(x, 0, y).unwrap();
        let d = x.divisor(d);
        let c = y.curve(vec![c]);
        let lhs = x.pair(&d, &phi.numerical_pullback(&c).unwrap()).unwrap();
        let rhs = y.pair(&phi.pushforward_divisor(&d).unwrap(), &c).unwrap();
        prop_assert_eq!(lhs, rhs);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        prop_assert!(phi.check_projection_formula(5, &mut rng));
    }
}
