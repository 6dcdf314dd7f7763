use bdldp::analysis::comm_cost;
use bdldp::estimation::{closed_form_loss, estimate, expected_estimate, simulate_loss};
use bdldp::mechanisms::{decompose, verify_decomposition, verify_ldp};
use bdldp::resolutions::cyclic_shift_resolution;
use bdldp::{Decomposition32, Mechanism, Mechanism32};

#[test]
fn f32_pipeline_agrees_with_f64() {
    let (d, r) = cyclic_shift_resolution(6, 3).unwrap();
    let single = Mechanism32::new(d.clone(), 0.8f32).unwrap();
    let double = Mechanism::new(d, 0.8f64).unwrap();
    let ch32 = single.channel();
    let ch64 = double.channel();
    for x in 0..6 {
        for z in 0..20 {
            assert!((ch32.get(x, z) as f64 - ch64.get(x, z)).abs() < 1e-7);
        }
    }

    let dec: Decomposition32 = decompose(&single, &r).unwrap();
    assert!(verify_decomposition(&single, &dec, 1e-6).unwrap().passed);
    assert!(verify_ldp(&dec, 0.8f32, 1e-5).passed);
    assert!((comm_cost(&dec) - comm_cost(&decompose(&double, &r).unwrap())).abs() < 1e-12);

    let p = [0.3f32, 0.1, 0.1, 0.2, 0.2, 0.1];
    for (e, want) in expected_estimate(&single, &p).unwrap().iter().zip(p) {
        assert!((e - want).abs() < 1e-5);
    }
    let est = estimate(&[9, 4, 6, 5, 3, 3], 10, 6, 3, 0.8f32).unwrap();
    assert!((est.iter().sum::<f32>() - 1.0).abs() < 1e-5);

    let closed = closed_form_loss(2000, 6, 3, 0.8f32).unwrap();
    let sim = simulate_loss(&dec, &[1.0 / 6.0; 6], 2000, 100, 11).unwrap();
    assert!((sim.mean_mse - closed).abs() <= 3.0 * sim.std_err);
}
