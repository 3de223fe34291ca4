use proptest::prelude::*;

use torsion_forge::algebra::{int, rat, QPoly, Rationals};
use torsion_forge::families::{
    build_family, expected_orders, phi_decomposition, CurveModelJson, Family, FamilyError, FamilyParams, MarkedPoint,
};
use torsion_forge::jacobian::CurvePoint;

fn instances(max_g: u32) -> Vec<FamilyParams> {
    let mut out = Vec::new();
    for g in 2..=max_g {
        out.push(FamilyParams::thm_a(g).unwrap());
        out.push(FamilyParams::thm_b(g).unwrap());
        out.push(FamilyParams::cor43(g, int(2)).unwrap());
        out.push(FamilyParams::cor43(g, rat(-1, 3)).unwrap());
        if g % 2 == 1 {
            out.push(FamilyParams::thm41(g, int(3)).unwrap());
            out.push(FamilyParams::thm41(g, rat(-5, 2)).unwrap());
        }
    }
    out
}

fn check_model_invariants(params: &FamilyParams) {
    let model = build_family(params).unwrap();
    let g = params.g();
    assert_eq!(model.f().degree(), Some(2 * g as usize + 1), "{params:?}");
    assert!(model.f().is_squarefree().unwrap());
    assert_eq!(model.curve().genus(), g as usize);
    let c = model.scale_c();
    assert_eq!(model.f_int(), &model.f().scale(&(c * c)));
    for m in MarkedPoint::ALL {
        let CurvePoint::Affine { x, y } = model.marked_point(m) else { panic!() };
        assert!(model.curve().contains(&x, &y));
        let CurvePoint::Affine { x, y } = model.to_integral(&model.marked_point(m)) else { panic!() };
        assert!(model.integral_curve().contains(&x, &y));
    }
    // the branch term identity f = A^2 - lambda x^(g+1+d) (x-1)^(g-d)
    let x = QPoly::x(Rationals);
    let xm1 = &x - &QPoly::one(Rationals);
    let branch = (&x.pow(g + 1 + params.d()) * &xm1.pow(g - params.d())).scale(model.lambda());
    assert_eq!(&(model.a_poly() * model.a_poly()) - &branch, model.f().clone());
}

#[test]
fn every_family_member_is_a_genus_g_curve() {
    for params in instances(8) {
        check_model_invariants(&params);
    }
}

#[test]
fn norm_identity_for_every_family_member() {
    for params in instances(10) {
        let model = build_family(&params).unwrap();
        let phi = phi_decomposition(&model).unwrap();
        let (g, d, m) = (params.g(), params.d(), params.m());
        let x = QPoly::x(Rationals);
        let xm1 = &x - &QPoly::one(Rationals);
        assert_eq!(&phi.a + &(&phi.b * model.a_poly()), &phi.p * &x.pow(g + m));
        assert_eq!(&phi.a - &(&phi.b * model.a_poly()), &phi.q * &xm1.pow(g - d));
        let norm = &(&phi.a * &phi.a) - &(&(&phi.b * &phi.b) * model.f());
        assert_eq!(norm, &x.pow(g + m) * &xm1.pow(g + m + 2), "{params:?}");
    }
}

#[test]
fn determinant_equals_bound() {
    for g in 2..=20 {
        let mut all = vec![FamilyParams::thm_a(g).unwrap(), FamilyParams::thm_b(g).unwrap()];
        all.push(FamilyParams::cor43(g, int(2)).unwrap());
        for p in all {
            let e = expected_orders(&p);
            assert_eq!(e.determinant(), e.bound as i64);
        }
    }
    assert_eq!(expected_orders(&FamilyParams::thm_a(7).unwrap()).exact, Some(4 * 49 + 14 - 2));
    assert_eq!(expected_orders(&FamilyParams::thm_b(7).unwrap()).exact, Some(4 * 49 + 14 - 4));
    assert_eq!(expected_orders(&FamilyParams::thm41(7, int(2)).unwrap()).exact, Some(2 * 49 + 49 + 1));
}

#[test]
fn generic_t_only_closes_at_the_special_value() {
    for g in 2..=6 {
        for (n, d) in [(1, 3), (2, 7), (-1, 5), (5, 1)] {
            let t = rat(n, d);
            if t == FamilyParams::default_t(g) {
                continue;
            }
            let err = build_family(&FamilyParams::generic_t(g, t).unwrap()).unwrap_err();
            assert_eq!(err, FamilyError::NonExactDivision);
        }
    }
}

#[test]
fn wire_ids() {
    for f in Family::ALL {
        assert_eq!(f.id().parse::<Family>().unwrap(), f);
        assert_eq!(serde_json::to_string(&f).unwrap(), format!("\"{}\"", f.id()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn thm41_members_satisfy_the_norm_identity(n in -30i64..30, d in 1i64..12, gi in 0usize..2) {
        let g = [3u32, 5][gi];
        let beta = rat(n, d);
        let Ok(params) = FamilyParams::thm41(g, beta) else { return Ok(()) };
        match build_family(&params) {
            Ok(model) => {
                let phi = phi_decomposition(&model).unwrap();
                let x = QPoly::x(Rationals);
                let xm1 = &x - &QPoly::one(Rationals);
                let norm = &(&phi.a * &phi.a) - &(&(&phi.b * &phi.b) * model.f());
                prop_assert_eq!(norm, &x.pow(g + 1) * &xm1.pow(g + 3));
            }
            Err(FamilyError::DegenerateCurve(_)) | Err(FamilyError::MarkedPointOnBranch) => {}
            Err(e) => prop_assert!(false, "unexpected {e}"),
        }
    }

    #[test]
    fn cor43_square_roots(n in -40i64..40, d in 1i64..15, g in 2u32..7) {
        let t = rat(n, d);
        let Ok(params) = FamilyParams::cor43(g, t) else { return Ok(()) };
        let sb = params.sqrt_beta().unwrap();
        let sbm1 = params.sqrt_beta_minus_1().unwrap();
        prop_assert_eq!(&(sb * sb), params.beta().unwrap());
        prop_assert_eq!(sbm1 * sbm1, params.beta().unwrap() - int(1));
    }

    #[test]
    fn json_round_trip(gi in 0usize..3, which in 0usize..3) {
        let g = [2u32, 3, 5][gi];
        let params = match which {
            0 => FamilyParams::thm_a(g).unwrap(),
            1 => FamilyParams::thm_b(g).unwrap(),
            _ => FamilyParams::cor43(g, int(3)).unwrap(),
        };
        let model = build_family(&params).unwrap();
        let text = serde_json::to_string(&model.to_json()).unwrap();
        let back: CurveModelJson = serde_json::from_str(&text).unwrap();
        let rebuilt = back.rebuild().unwrap();
        prop_assert_eq!(rebuilt.f_int(), model.f_int());
        prop_assert_eq!(serde_json::to_string(&rebuilt.to_json()).unwrap(), text);
    }
}
