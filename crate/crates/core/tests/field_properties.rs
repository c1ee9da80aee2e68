mod common;

use boundary_vt::synth;
use boundary_vt::{
    brute_force_nearest, dt_from_mask, label_argmin, nearest_boundary_map, vt_from_labels, vt_from_mask,
    BoundaryMask, VtError,
};
use proptest::prelude::*;

fn mask_strategy(max: usize) -> impl Strategy<Value = BoundaryMask> {
    (1..=max, 1..=max, 0.005f64..0.3, any::<u64>()).prop_map(|(w, h, density, seed)| {
        let mut rng = synth::rng(seed);
        synth::random_mask(w, h, density, &mut rng)
    })
}

fn is_thick(mask: &BoundaryMask) -> bool {
    let (w, h) = mask.dims();
    mask.points().into_iter().any(|(x, y)| {
        (-1i64..=1).all(|dy| {
            (-1i64..=1).all(|dx| {
                let (nx, ny) = (x as i64 + dx, y as i64 + dy);
                nx < 0 || ny < 0 || nx >= w as i64 || ny >= h as i64 || mask.is_boundary(nx as usize, ny as usize)
            })
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exact_edt_matches_exhaustive_scan(mask in mask_strategy(48)) {
        let oracle = common::brute_sq_dist(&mask);
        let map = nearest_boundary_map(&mask).unwrap();
        prop_assert_eq!(map.squared_distances(), &oracle[..]);
        let dt = dt_from_mask(&mask).unwrap();
        for (&d, &sq) in dt.grid.data().iter().zip(&oracle) {
            prop_assert!((d - (sq as f64).sqrt()).abs() <= 1e-9);
        }
    }

    #[test]
    fn exact_map_agrees_with_brute_force_reference(mask in mask_strategy(32)) {
        let fast = nearest_boundary_map(&mask).unwrap();
        let slow = brute_force_nearest(&mask).unwrap();
        let (w, h) = mask.dims();
        for y in 0..h {
            for x in 0..w {
                prop_assert_eq!(fast.squared_distance(x, y), slow.squared_distance(x, y));
                prop_assert_eq!(fast.nearest(x, y), slow.nearest(x, y));
                prop_assert_eq!(fast.tie_count(x, y), slow.tie_count(x, y));
                let (a, b) = (fast.target(x, y), slow.target(x, y));
                prop_assert!((a[0] - b[0]).abs() < 1e-12 && (a[1] - b[1]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn mask_field_matches_reference(mask in mask_strategy(32)) {
        match vt_from_mask(&mask) {
            Ok(field) => {
                prop_assert!(!is_thick(&mask));
                let reference = common::brute_mask_field(&mask);
                let (w, h) = mask.dims();
                for y in 0..h {
                    for x in 0..w {
                        let (a, b) = (field.at(x, y), reference.at(x, y));
                        prop_assert!((a[0] - b[0]).abs() < 1e-12 && (a[1] - b[1]).abs() < 1e-12,
                            "({}, {}): {:?} vs {:?}", x, y, a, b);
                    }
                }
            }
            Err(VtError::NoNonBoundaryNeighbor { .. }) => prop_assert!(is_thick(&mask)),
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn ground_truth_fields_have_unit_norm(mask in mask_strategy(40)) {
        if let Ok(field) = vt_from_mask(&mask) {
            for (vx, vy) in field.vx.data().iter().zip(field.vy.data()) {
                prop_assert!((vx.hypot(*vy) - 1.0).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn voronoi_label_fields_match_reference(seeds in 2usize..=6, seed in any::<u64>()) {
        let mut rng = synth::rng(seed);
        let labels = synth::voronoi_labels(40, 40, seeds, &mut rng);
        prop_assume!(labels.distinct_labels().len() >= 2);
        let (field, band) = vt_from_labels(&labels).unwrap();
        prop_assert_eq!(band, labels.induced_boundary());
        let reference = common::brute_label_field(&labels);
        for (a, b) in field.vx.data().iter().zip(reference.vx.data())
            .chain(field.vy.data().iter().zip(reference.vy.data())) {
            prop_assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn transforms_are_deterministic(mask in mask_strategy(32)) {
        let a = vt_from_mask(&mask);
        let b = vt_from_mask(&mask);
        if let (Ok(a), Ok(b)) = (a, b) {
            prop_assert_eq!(a, b);
        }
    }
}

#[test]
fn voronoi_64_directions_match_exhaustive_search() {
    let mut rng = synth::rng(31);
    for _ in 0..5 {
        let labels = synth::voronoi_labels(64, 64, 6, &mut rng);
        let (field, _) = vt_from_labels(&labels).unwrap();
        let reference = common::brute_label_field(&labels);
        assert_eq!(field.vx.data().len(), reference.vx.data().len());
        for (a, b) in field.vx.data().iter().zip(reference.vx.data()) {
            assert!((a - b).abs() < 1e-12);
        }
        for (a, b) in field.vy.data().iter().zip(reference.vy.data()) {
            assert!((a - b).abs() < 1e-12);
        }
    }
}

#[test]
fn label_distance_is_distance_to_other_labels() {
    let labels = synth::disk_labels(40, 30, 18.0, 14.0, 9.0);
    let argmin = label_argmin(&labels).unwrap();
    let (w, h) = labels.dims();
    for y in 0..h {
        for x in 0..w {
            let own = labels.grid[(x, y)];
            let best = (0..h)
                .flat_map(|v| (0..w).map(move |u| (u, v)))
                .filter(|&(u, v)| labels.grid[(u, v)] != own)
                .map(|(u, v)| (u as i64 - x as i64).pow(2) + (v as i64 - y as i64).pow(2))
                .min()
                .unwrap();
            assert_eq!(argmin.squared_distance(x, y), best as u64);
        }
    }
}

/// Angle in degrees between the field at `(x, y)` and the analytic normal
/// pointing from the pixel to the continuous line through `(x0, y0)` with
/// direction `(dx, dy)`, and the pixel's distance to that line.
fn normal_deviation(v: [f64; 2], x: usize, y: usize, x0: f64, y0: f64, dx: i64, dy: i64) -> (f64, f64, [f64; 2]) {
    let len = ((dx * dx + dy * dy) as f64).sqrt();
    let (tx, ty) = (dx as f64 / len, dy as f64 / len);
    let (px, py) = (x as f64 - x0, y as f64 - y0);
    let along = px * tx + py * ty;
    let (nx, ny) = (along * tx - px, along * ty - py);
    let dist = nx.hypot(ny);
    let cos = (v[0] * nx + v[1] * ny) / dist;
    (cos.clamp(-1.0, 1.0).acos().to_degrees(), dist, [x0 + along * tx, y0 + along * ty])
}

#[test]
fn axis_and_diagonal_lines_give_exact_normals() {
    for (dx, dy) in [(1, 0), (0, 1), (1, 1), (1, -1)] {
        let (x0, y0) = if dx == 0 { (31.0, 0.0) } else { (0.0, 31.0) };
        let m = synth::line_mask(64, 64, x0, y0, dx, dy);
        let f = vt_from_mask(&m).unwrap();
        let dt = dt_from_mask(&m).unwrap();
        for y in 0..64 {
            for x in 0..64 {
                if dt.at(x, y) < 2.0 {
                    continue;
                }
                let (dev, dist, foot) = normal_deviation(f.at(x, y), x, y, x0, y0, dx, dy);
                // Skip pixels whose foot point falls off the rasterised line.
                let inside = (0.0..=63.0).contains(&foot[0]) && (0.0..=63.0).contains(&foot[1]);
                if inside && dist > 0.0 {
                    assert!(dev < 5.0, "{dx}/{dy} at ({x}, {y}): {dev} deg");
                }
            }
        }
    }
}

/// On other rational slopes the raster is a staircase and the closest raster
/// pixel can sit off the foot of the perpendicular. Raster pixels lie within
/// 1/2 px of the line and one occurs per unit step along the major axis, so
/// the tangential offset `t` of the closest one obeys `t^2 <= 2d + 1/2`. The
/// deviation is therefore at most `atan(sqrt(2d + 1/2) / (d - 1/2))`, which
/// shrinks with distance.
#[test]
fn oblique_lines_approach_the_normal_with_distance() {
    for (dx, dy) in [(2, 1), (3, 1), (3, 2), (1, 2), (5, 3), (2, -1), (4, -3)] {
        let (x0, y0) = if i64::abs(dx) >= i64::abs(dy) { (0.0, 31.0) } else { (31.0, 0.0) };
        let m = synth::line_mask(64, 64, x0, y0, dx, dy);
        let f = vt_from_mask(&m).unwrap();
        let mut far_worst: f64 = 0.0;
        let mut checked = 0;
        for y in 0..64 {
            for x in 0..64 {
                let (dev, dist, foot) = normal_deviation(f.at(x, y), x, y, x0, y0, dx, dy);
                let margin = dist + 2.0;
                let central = foot[0] >= margin && foot[0] <= 61.0 - dist && foot[1] >= margin && foot[1] <= 61.0 - dist;
                if dist < 2.0 || !central {
                    continue;
                }
                checked += 1;
                let bound = ((2.0 * dist + 0.5).sqrt() / (dist - 0.5)).atan().to_degrees();
                assert!(dev <= bound + 1e-9, "{dx}/{dy} at ({x}, {y}) d={dist:.2}: {dev:.2} > {bound:.2}");
                if dist >= 10.0 {
                    far_worst = far_worst.max(dev);
                }
            }
        }
        assert!(checked > 50);
        assert!(far_worst < 20.0, "{dx}/{dy}: {far_worst}");
    }
}

#[test]
fn thick_boundaries_are_rejected() {
    let m = BoundaryMask::from_fn(6, 6, |x, y| (1..4).contains(&x) && (1..4).contains(&y));
    assert!(matches!(vt_from_mask(&m), Err(VtError::NoNonBoundaryNeighbor { x: 2, y: 2 })));
}
