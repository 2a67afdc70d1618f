//! Scratch timing harness for the heavy estimator paths.

use fillrad_core::homology::{discrete_filling_radius, FieldChoice};
use fillrad_core::metric::{sample_model_space, ModelKind, ModelSpaceSpec};
use std::time::Instant;

fn main() {
    let which = std::env::args().nth(1).unwrap_or_else(|| "sphere".into());
    match which.as_str() {
        "sphere" => {
            let m = sample_model_space(&ModelSpaceSpec::new(
                ModelKind::Sphere2 { radius: 1.0 },
                300,
                0,
            ))
            .unwrap();
            println!("n = {}", m.space.len());
            let t = Instant::now();
            let r = discrete_filling_radius(&m, FieldChoice::Z2, None).unwrap();
            println!(
                "sphere fillrad: est={:.6} death={:?} cols={} target={:.6} rel={:.4} elapsed={:?}",
                r.estimate,
                r.death_scale,
                r.columns_processed,
                0.5 * (-1.0f64 / 3.0).acos(),
                (r.estimate - 0.5 * (-1.0f64 / 3.0).acos()).abs() / (0.5 * (-1.0f64 / 3.0).acos()),
                t.elapsed()
            );
        }
        "circle" => {
            let m = sample_model_space(&ModelSpaceSpec::new(
                ModelKind::Circle { radius: 1.0 },
                64,
                0,
            ))
            .unwrap();
            let t = Instant::now();
            let r = discrete_filling_radius(&m, FieldChoice::Rational, None).unwrap();
            println!(
                "circle fillrad: est={:.6} cols={} elapsed={:?}",
                r.estimate, r.columns_processed, t.elapsed()
            );
        }
        "torus" => {
            let m = sample_model_space(&ModelSpaceSpec::new(
                ModelKind::FlatTorus { l1: 1.0, l2: 1.0 },
                196,
                0,
            ))
            .unwrap();
            println!("n = {}", m.space.len());
            let t = Instant::now();
            let r = discrete_filling_radius(&m, FieldChoice::Z2, None).unwrap();
            println!(
                "torus fillrad: est={:.6} death={:?} cols={} elapsed={:?}",
                r.estimate, r.death_scale, r.columns_processed, t.elapsed()
            );
        }
        "product" => {
            use fillrad_core::homology::product_fillrad_check;
            let t = Instant::now();
            let r = product_fillrad_check(1.0, 16, 8.0, 272, FieldChoice::Rational).unwrap();
            println!(
                "product: base={:.6} product={:.6} gap={:.4} cols_b={} cols_p={} short={} elapsed={:?}",
                r.base.estimate,
                r.product.estimate,
                r.relative_gap,
                r.base.columns_processed,
                r.product.columns_processed,
                r.interval_too_short,
                t.elapsed()
            );
        }
        _ => eprintln!("unknown timing case"),
    }
}
