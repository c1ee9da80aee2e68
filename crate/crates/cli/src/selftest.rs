//! Oracle and round-trip checks that run against the installed library.

use boundary_vt::io::{field_file, pgm};
use boundary_vt::metrics::{hausdorff, surface_distances};
use boundary_vt::{
    brute_force_nearest, divergence, invert_field, nearest_boundary_map, synth, upsample_support, vt_from_labels,
    VectorField,
};

use crate::commands::Ctx;
use crate::error::CliError;
use crate::SelftestArgs;

type Check = Result<String, String>;

fn edt_oracle(seed: u64) -> Check {
    let mut rng = synth::rng(seed);
    for i in 0..20 {
        let mask = synth::random_mask(64, 64, 0.005 * (i + 1) as f64, &mut rng);
        if mask.is_blank() {
            continue;
        }
        let fast = nearest_boundary_map(&mask).map_err(|e| e.to_string())?;
        let slow = brute_force_nearest(&mask).map_err(|e| e.to_string())?;
        if fast.squared_distances() != slow.squared_distances() {
            return Err(format!("mask {i} differs from exhaustive search"));
        }
    }
    Ok("20 masks match exhaustive search".into())
}

fn round_trip(seed: u64) -> Check {
    let mut worst: f64 = 0.0;
    for (i, (_, labels)) in synth::label_suite(64, 64, 20, seed).iter().enumerate() {
        let (field, band) = vt_from_labels(labels).map_err(|e| format!("map {i}: {e}"))?;
        let mask = invert_field(&field).mask;
        let h = hausdorff(&mask, &band).map_err(|e| format!("map {i}: {e}"))?;
        worst = worst.max(h);
    }
    if worst <= 1.0 {
        Ok(format!("worst Hausdorff {worst:.3} px"))
    } else {
        Err(format!("Hausdorff {worst:.3} px exceeds 1"))
    }
}

fn calibration() -> Check {
    let field = VectorField::from_fn(16, 12, |x, _| if x < 7 { [1.0, 0.0] } else { [-1.0, 0.0] });
    let div = divergence(&upsample_support(&field)).grid;
    let worst = (0..24).map(|y| (div[(13, y)] + 2.0).abs()).fold(0.0, f64::max);
    if worst < 1e-6 {
        Ok("boundary divergence -2".into())
    } else {
        Err(format!("boundary divergence off by {worst}"))
    }
}

fn codecs(seed: u64) -> Check {
    let mut rng = synth::rng(seed);
    let mask = synth::random_mask(33, 17, 0.2, &mut rng);
    let samples = mask.grid.data().iter().map(|&b| if b { 255 } else { 0 }).collect();
    let p = pgm::Pgm {
        width: 33,
        height: 17,
        maxval: 255,
        samples,
    };
    if pgm::decode(&pgm::encode(&p)).map_err(|e| e.to_string())? != p {
        return Err("PGM round trip changed the image".into());
    }
    let field = VectorField::from_fn(9, 7, |x, y| {
        let a = (x * 7 + y) as f32 * 0.1;
        [f64::from(a.cos()), f64::from(a.sin())]
    });
    let bytes = field_file::encode(&[&field.vx, &field.vy]).map_err(|e| e.to_string())?;
    let back = field_file::decode(&bytes)
        .and_then(|f| f.into_field())
        .map_err(|e| e.to_string())?;
    if back != field {
        return Err("field file round trip changed the payload".into());
    }
    Ok("PGM and field file round trips exact".into())
}

fn metric_identities(seed: u64) -> Check {
    let mut rng = synth::rng(seed);
    let a = synth::random_mask(24, 24, 0.1, &mut rng);
    let b = synth::random_mask(24, 24, 0.1, &mut rng);
    if a.is_blank() || b.is_blank() {
        return Ok("skipped on blank masks".into());
    }
    let same = surface_distances(&a, &a).map_err(|e| e.to_string())?;
    let ab = surface_distances(&a, &b).map_err(|e| e.to_string())?;
    let ba = surface_distances(&b, &a).map_err(|e| e.to_string())?;
    if same.assd != 0.0 || ab.assd != ba.assd {
        return Err(format!("assd self {} / {} vs {}", same.assd, ab.assd, ba.assd));
    }
    Ok("assd symmetric and zero on identity".into())
}

pub fn run(ctx: &Ctx, a: SelftestArgs) -> Result<(), CliError> {
    let seed = ctx.file.pick(a.seed, "seed", 1u64)?;
    let checks: [(&str, Check); 5] = [
        ("edt-oracle", edt_oracle(seed)),
        ("round-trip", round_trip(seed)),
        ("calibration", calibration()),
        ("codecs", codecs(seed)),
        ("metric-identities", metric_identities(seed)),
    ];
    let mut failed = 0;
    for (name, result) in checks {
        match result {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail}");
            }
        }
    }
    if failed > 0 {
        return Err(CliError::SelfTest(failed));
    }
    Ok(())
}
