use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use boundary_vt::derived::{self, SuperpixelParams, LINE_THRESHOLD};
use boundary_vt::inverse::divergence_original;
use boundary_vt::io::{self, field_file, viz};
use boundary_vt::metrics::{self, EvalConfig, ThresholdLadder};
use boundary_vt::{
    dt_from_mask, invert_field, label_argmin, vt_from_labels, vt_from_mask, BoundaryImage, BoundaryMask,
    PixelGrid, VectorField,
};
use log::info;
use rayon::prelude::*;

use crate::config::{output_path, ConfigFile};
use crate::error::{CliError, Context};
use crate::{
    DirectionArgs, EvalArgs, Format, InvertArgs, LinesArgs, ProfileArgs, SuperpixelArgs, TransformArgs, VizArgs,
    VizKind,
};

pub struct Ctx {
    pub file: ConfigFile,
    pub out_dir: PathBuf,
}

impl Ctx {
    /// Output location for `name`, with parent directories created.
    pub fn output(&self, name: &Path) -> Result<PathBuf, CliError> {
        let path = output_path(&self.out_dir, name)?;
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent).map_err(|e| CliError::io(parent, e))?;
        }
        Ok(path)
    }

    fn write_text(&self, name: &Path, text: &str) -> Result<(), CliError> {
        let path = self.output(name)?;
        fs::write(&path, text).map_err(|e| CliError::io(&path, e))
    }
}

fn read_bytes(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|e| CliError::io(path, e))
}

/// Two-channel field files are fields, everything else is a scalar raster.
enum Raster {
    Field(VectorField),
    Scalar(PixelGrid<f64>),
}

fn read_raster(path: &Path) -> Result<Raster, CliError> {
    let bytes = read_bytes(path)?;
    if bytes.starts_with(&field_file::MAGIC) {
        let f = field_file::decode(&bytes).at(path)?;
        return if f.planes.len() == 2 {
            Ok(Raster::Field(f.into_field().at(path)?))
        } else {
            Ok(Raster::Scalar(f.into_scalar().at(path)?))
        };
    }
    let strength = io::read_strength(path).at(path)?;
    Ok(Raster::Scalar(strength.strength))
}

fn read_field(path: &Path) -> Result<VectorField, CliError> {
    io::read_field(path).at(path)
}

fn boundary_or_inverted(field: &VectorField, boundary: Option<&PathBuf>) -> Result<BoundaryMask, CliError> {
    match boundary {
        Some(p) => io::read_mask(p).at(p),
        None => Ok(invert_field(field).mask),
    }
}

pub fn transform(ctx: &Ctx, a: TransformArgs) -> Result<(), CliError> {
    let start = Instant::now();
    let (field, band, dt) = if let Some(p) = &a.source.mask {
        let mask = io::read_mask(p).at(p)?;
        let field = vt_from_mask(&mask).at(p)?;
        let dt = a.dt.is_some().then(|| dt_from_mask(&mask)).transpose().at(p)?.map(|d| d.grid);
        (field, mask, dt)
    } else {
        let p = a.source.labels.as_ref().expect("clap requires a source");
        let labels = io::read_labels(p).at(p)?;
        let (field, band) = vt_from_labels(&labels).at(p)?;
        let dt = match a.dt {
            Some(_) => {
                let argmin = label_argmin(&labels).at(p)?;
                let (w, h) = argmin.dims();
                Some(PixelGrid::from_fn(w, h, |x, y| argmin.distance(x, y)))
            }
            None => None,
        };
        (field, band, dt)
    };
    info!("transform took {:.1} ms", start.elapsed().as_secs_f64() * 1e3);

    let out = ctx.output(&a.out)?;
    io::write_field(&out, &field).at(&out)?;
    if let (Some(name), Some(dt)) = (&a.dt, &dt) {
        let p = ctx.output(name)?;
        io::write_scalar(&p, dt).at(&p)?;
    }
    if let Some(name) = &a.band {
        let p = ctx.output(name)?;
        io::write_mask(&p, &band).at(&p)?;
    }
    let (w, h) = field.dims();
    println!("{w}x{h} field, {} boundary pixels", band.count());
    Ok(())
}

pub fn invert(ctx: &Ctx, a: InvertArgs) -> Result<(), CliError> {
    let field = read_field(&a.field)?;
    let inv = invert_field(&field);
    let out = ctx.output(&a.out)?;
    io::write_mask(&out, &inv.mask).at(&out)?;
    if let Some(name) = &a.strength {
        let p = ctx.output(name)?;
        io::write_scalar(&p, &inv.boundary.strength).at(&p)?;
    }
    if let Some(name) = &a.divergence {
        let p = ctx.output(name)?;
        io::write_scalar(&p, &inv.support_divergence.grid).at(&p)?;
    }
    println!("{} boundary pixels", inv.mask.count());
    Ok(())
}

fn read_pairs(list: &Path) -> Result<Vec<(PathBuf, PathBuf)>, CliError> {
    let text = fs::read_to_string(list).map_err(|e| CliError::io(list, e))?;
    let base = list.parent().unwrap_or(Path::new(""));
    let mut pairs = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        let [pred, gt] = parts[..] else {
            return Err(CliError::Usage(format!(
                "{} line {}: expected `prediction ground-truth`",
                list.display(),
                n + 1
            )));
        };
        pairs.push((base.join(pred), base.join(gt)));
    }
    Ok(pairs)
}

fn read_prediction(path: &Path) -> Result<BoundaryImage, CliError> {
    Ok(match read_raster(path)? {
        Raster::Field(f) => invert_field(&f).boundary,
        Raster::Scalar(s) => BoundaryImage::original(s),
    })
}

pub fn eval(ctx: &Ctx, a: EvalArgs) -> Result<(), CliError> {
    if a.pred.len() != a.gt.len() {
        return Err(CliError::Usage(format!(
            "{} predictions but {} ground truths",
            a.pred.len(),
            a.gt.len()
        )));
    }
    let mut pairs: Vec<(PathBuf, PathBuf)> = a.pred.into_iter().zip(a.gt).collect();
    if let Some(list) = &a.pairs {
        pairs.extend(read_pairs(list)?);
    }
    if pairs.is_empty() {
        return Err(CliError::Usage("nothing to evaluate: give --pred/--gt or --pairs".into()));
    }
    let tolerance_fraction = ctx.file.pick(a.tolerance_fraction, "tolerance_fraction", 0.0025)?;
    if !(tolerance_fraction > 0.0) {
        return Err(CliError::Usage("tolerance fraction must be positive".into()));
    }
    let ladder = ThresholdLadder::new(ctx.file.pick(a.ladder, "ladder", 99)?)?;
    let config = EvalConfig {
        tolerance_fraction,
        ladder,
    };

    let loaded = pairs
        .par_iter()
        .map(|(p, g)| Ok((read_prediction(p)?, io::read_mask(g).at(g)?)))
        .collect::<Result<Vec<_>, CliError>>()?;
    let (preds, gts): (Vec<_>, Vec<_>) = loaded.into_iter().unzip();
    let names: Vec<String> = pairs
        .iter()
        .map(|(p, _)| p.file_stem().map_or_else(|| p.display().to_string(), |s| s.to_string_lossy().into()))
        .collect();
    let start = Instant::now();
    let report = metrics::evaluate(&names, &preds, &gts, &config)?;
    info!("evaluated {} image(s) in {:.2} s", names.len(), start.elapsed().as_secs_f64());

    let text = match a.format {
        Format::Csv => report.to_csv(),
        Format::Kv => report.to_kv(),
    };
    match &a.out {
        Some(name) => ctx.write_text(name, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn direction(ctx: &Ctx, a: DirectionArgs) -> Result<(), CliError> {
    let field = read_field(&a.field)?;
    let boundary = boundary_or_inverted(&field, a.boundary.as_ref())?;
    let angles = derived::direction_angles(&field, &boundary)?;
    let out = ctx.output(&a.out)?;
    io::write_scalar(&out, &angles.angles).at(&out)?;
    println!("{} oriented pixels", angles.defined.count());
    if let Some(r) = &a.reference {
        let rf = read_field(r)?;
        let rb = boundary_or_inverted(&rf, a.reference_boundary.as_ref())?;
        let reference = derived::direction_angles(&rf, &rb)?;
        let e = derived::angle_rmse(&angles, &reference)?;
        println!(
            "rmse_degrees={:.6}\ncompared={}\ncoverage={:.6}",
            e.rmse_degrees, e.compared, e.coverage
        );
    }
    Ok(())
}

pub fn lines(ctx: &Ctx, a: LinesArgs) -> Result<(), CliError> {
    let field = read_field(&a.field)?;
    let boundary = boundary_or_inverted(&field, a.boundary.as_ref())?;
    let t = ctx.file.pick(a.threshold, "line_threshold", LINE_THRESHOLD)?;
    let proposals = derived::line_proposals(&field, &boundary, t)?;
    let out = ctx.output(&a.out)?;
    io::write_mask(&out, &proposals).at(&out)?;
    println!("{} of {} boundary pixels on straight segments", proposals.count(), boundary.count());
    Ok(())
}

pub fn superpixels(ctx: &Ctx, a: SuperpixelArgs) -> Result<(), CliError> {
    let field = read_field(&a.field)?;
    let d = SuperpixelParams::default();
    let f = &ctx.file;
    let params = SuperpixelParams {
        source_threshold: f.pick(a.source_threshold, "source_threshold", d.source_threshold)?,
        step_size: f.pick(a.step_size, "step_size", d.step_size)?,
        max_steps: f.pick(a.max_steps, "max_steps", d.max_steps)?,
        convergence: d.convergence,
        eps: f.pick(a.eps, "eps", d.eps)?,
        min_samples: f.pick(a.min_samples, "min_samples", d.min_samples)?,
    };
    let start = Instant::now();
    let sp = derived::superpixels(&field, &params)?;
    info!("superpixels took {:.1} ms", start.elapsed().as_secs_f64() * 1e3);
    let out = ctx.output(&a.out)?;
    io::write_labels(&out, &sp.labels).at(&out)?;
    println!(
        "{} superpixels ({} centroid regions, {} exit clusters)",
        sp.count(),
        sp.centroid_regions.len(),
        sp.exit_clusters
    );
    Ok(())
}

pub fn profile(ctx: &Ctx, a: ProfileArgs) -> Result<(), CliError> {
    let values = match read_raster(&a.values)? {
        Raster::Field(f) => divergence_original(&f).grid,
        Raster::Scalar(s) => s,
    };
    let gt = io::read_mask(&a.gt).at(&a.gt)?;
    let max_distance = ctx.file.pick(a.max_distance, "max_distance", 10.0)?;
    let curve = metrics::prediction_profile(&values, &gt, max_distance)?;
    let mut text = String::from("distance,mean,stddev,count\n");
    for i in 0..curve.distances.len() {
        let _ = writeln!(
            text,
            "{:.6},{:.6},{:.6},{}",
            curve.distances[i], curve.mean[i], curve.stddev[i], curve.count[i]
        );
    }
    match &a.out {
        Some(name) => ctx.write_text(name, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn viz(ctx: &Ctx, a: VizArgs) -> Result<(), CliError> {
    if a.out.extension().and_then(|e| e.to_str()) != Some("png") {
        return Err(CliError::Usage("visualisations are written as .png".into()));
    }
    let raster = read_raster(&a.input)?;
    let stride = ctx.file.pick(a.quiver_stride, "quiver_stride", 0)?;
    let out = ctx.output(&a.out)?;
    let saved = match (a.kind, raster) {
        (VizKind::Auto | VizKind::Field, Raster::Field(f)) => {
            viz::field_to_rgb(&f, (stride > 0).then_some(stride)).save(&out)
        }
        (VizKind::Divergence, Raster::Field(f)) => viz::diverging_to_rgb(&divergence_original(&f).grid, a.scale).save(&out),
        (VizKind::Auto | VizKind::Divergence, Raster::Scalar(s)) => viz::diverging_to_rgb(&s, a.scale).save(&out),
        (VizKind::Boundary, Raster::Scalar(s)) => viz::strength_to_gray(&s).save(&out),
        (VizKind::Boundary, Raster::Field(f)) => viz::strength_to_gray(&invert_field(&f).boundary.strength).save(&out),
        (VizKind::Field, Raster::Scalar(_)) => {
            return Err(CliError::Usage(format!("{} holds no vector field", a.input.display())))
        }
    };
    saved.map_err(|e| CliError::File {
        path: out.clone(),
        source: e.into(),
    })
}
