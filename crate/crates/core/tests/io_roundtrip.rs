use boundary_vt::io::{self, field_file, pgm};
use boundary_vt::synth;
use boundary_vt::{BoundaryMask, PixelGrid, VectorField, VtError};
use proptest::prelude::*;
use rand::Rng;

fn field_of(w: usize, h: usize, seed: u64) -> VectorField {
    let mut rng = synth::rng(seed);
    VectorField::from_fn(w, h, |_, _| {
        // f32-representable unit-ish vectors survive the round trip bit for bit.
        let a = rng.random_range(-3.2f32..3.2);
        [f64::from(a.cos()), f64::from(a.sin())]
    })
}

#[test]
fn hundred_random_masks_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let mut rng = synth::rng(468);
    for i in 0..100 {
        let (w, h) = (rng.random_range(1..60), rng.random_range(1..60));
        let m = synth::random_mask(w, h, rng.random_range(0.0..0.5), &mut rng);
        let ext = if i % 2 == 0 { "pgm" } else { "png" };
        let p = dir.path().join(format!("m{i}.{ext}"));
        io::write_mask(&p, &m).unwrap();
        assert_eq!(io::read_mask(&p).unwrap(), m, "mask {i} ({ext})");
    }
}

#[test]
fn declared_size_must_match_payload() {
    let bytes = b"P5\n4 4\n255\n\x00\x00\x00".to_vec();
    assert!(matches!(pgm::decode(&bytes), Err(VtError::MalformedHeader(_))));
    let mut long = b"P5 2 1 255 ".to_vec();
    long.extend_from_slice(&[0, 0, 0]);
    assert!(matches!(pgm::decode(&long), Err(VtError::MalformedHeader(_))));
}

#[test]
fn oversized_header_is_rejected() {
    let bytes = b"P5 100000 100000 255 ".to_vec();
    assert!(matches!(pgm::decode(&bytes), Err(VtError::DimensionOverflow { .. })));
}

#[test]
fn all_zero_image_reads_as_empty_mask() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("zero.pgm");
    std::fs::write(&p, pgm::encode(&pgm::Pgm { width: 5, height: 3, maxval: 255, samples: vec![0; 15] })).unwrap();
    let m = io::read_mask(&p).unwrap();
    assert!(m.is_blank());
    assert!(boundary_vt::vt_from_mask(&m).is_err());
}

#[test]
fn errors_are_distinct() {
    let dir = tempfile::tempdir().unwrap();
    let missing = io::read_mask(dir.path().join("nope.pgm")).unwrap_err();
    assert!(matches!(missing, VtError::Io(_)) && missing.is_io());
    let p = dir.path().join("junk.pgm");
    std::fs::write(&p, b"hello").unwrap();
    assert!(matches!(io::read_mask(&p), Err(VtError::UnsupportedImage(_))));
}

#[test]
fn sixteen_bit_labels_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let labels = PixelGrid::from_fn(20, 10, |x, y| (x * 1000 + y * 7) as u32);
    for name in ["l.png", "l.pgm"] {
        let p = dir.path().join(name);
        io::write_labels(&p, &labels).unwrap();
        assert_eq!(io::read_labels(&p).unwrap().grid, labels);
    }
    let too_big = PixelGrid::filled(2, 2, 70_000u32);
    assert!(io::write_labels(dir.path().join("x.png"), &too_big).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_files_round_trip_bitwise(w in 1usize..40, h in 1usize..40, seed in any::<u64>()) {
        let f = field_of(w, h, seed);
        let bytes = field_file::encode(&[&f.vx, &f.vy]).unwrap();
        prop_assert_eq!(bytes.len(), 16 + 8 * w * h);
        let back = field_file::decode(&bytes).unwrap().into_field().unwrap();
        prop_assert_eq!(&back, &f);
        prop_assert_eq!(field_file::encode(&[&back.vx, &back.vy]).unwrap(), bytes);
    }

    #[test]
    fn pgm_round_trip(w in 1usize..30, h in 1usize..30, wide in any::<bool>(), seed in any::<u64>()) {
        let mut rng = synth::rng(seed);
        let maxval = if wide { 65535 } else { 255 };
        let samples: Vec<u16> = (0..w * h).map(|_| rng.random_range(0..=maxval)).collect();
        let p = pgm::Pgm { width: w, height: h, maxval, samples };
        prop_assert_eq!(pgm::decode(&pgm::encode(&p)).unwrap(), p);
    }

    #[test]
    fn masks_round_trip_through_files(seed in any::<u64>(), png in any::<bool>()) {
        let mut rng = synth::rng(seed);
        let m = synth::random_mask(rng.random_range(1..40), rng.random_range(1..40), 0.2, &mut rng);
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join(if png { "m.png" } else { "m.pgm" });
        io::write_mask(&p, &m).unwrap();
        prop_assert_eq!(io::read_mask(&p).unwrap(), m);
    }
}

#[test]
fn bad_magic_and_truncation() {
    let f = field_of(3, 2, 1);
    let mut bytes = field_file::encode(&[&f.vx, &f.vy]).unwrap();
    bytes[3] = b'2';
    assert!(matches!(field_file::decode(&bytes), Err(VtError::BadMagic(m)) if &m == b"VTF2"));
    let good = field_file::encode(&[&f.vx, &f.vy]).unwrap();
    assert!(matches!(field_file::decode(&good[..good.len() - 1]), Err(VtError::Truncated { .. })));
}

#[test]
fn one_channel_files_hold_angles() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("angles.vtf");
    let angles = PixelGrid::from_fn(4, 3, |x, y| (x as f64 - y as f64) * 0.5);
    io::write_scalar(&p, &angles).unwrap();
    assert_eq!(io::read_scalar(&p).unwrap(), angles);
    assert!(io::read_field(&p).is_err());
    let s = io::read_strength(&p).unwrap();
    assert_eq!(s.strength, angles);
}

#[test]
fn non_finite_values_are_rejected() {
    let g = PixelGrid::new(2, 1, vec![0.0, f64::NAN]).unwrap();
    let bytes = field_file::encode(&[&g]).unwrap();
    assert!(matches!(field_file::decode(&bytes), Err(VtError::NonFinite { index: 1 })));
}

#[test]
fn visualisations_have_the_raster_size() {
    let m = BoundaryMask::from_fn(16, 12, |x, y| x == 8 && y == 6);
    let f = boundary_vt::vt_from_mask(&m).unwrap();
    let rgb = io::viz::field_to_rgb(&f, Some(4));
    assert_eq!(rgb.dimensions(), (16, 12));
    let uniform = io::viz::field_to_rgb(&VectorField::constant(5, 5, [1.0, 0.0]), None);
    let first = *uniform.get_pixel(0, 0);
    assert!(uniform.pixels().all(|p| *p == first));
    let zero = io::viz::diverging_to_rgb(&PixelGrid::filled(4, 4, 0.0), None);
    assert!(zero.pixels().all(|p| *p == *zero.get_pixel(0, 0)));
}
