use serde::Serialize;

use numrange::analytic::{named_instances, theorem3_bound, FormulaId};
use numrange::septools::{abs_sep_extremum, Sense};
use numrange::{volume_ratio, DimensionProfile, RatioConfig};

use crate::error::{CliError, CliResult};
use crate::report::{csv_table, opt, text_table, Meta, Report};

/// Eigenvalues whose absolutely separable range has the smallest width
/// relative to the full range.
pub const ABS_SEP_SPECTRUM: [f64; 4] = [1.0, 0.5, 0.5, 0.0];

#[derive(Debug, Clone, Serialize)]
pub struct BoundRow {
    pub k: usize,
    pub bound: f64,
    pub formula: FormulaId,
    /// Named instances on this profile with k observables.
    pub instances: Vec<(String, f64)>,
    pub violated: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundsOutput {
    pub meta: Meta,
    pub dims: Vec<usize>,
    pub rows: Vec<BoundRow>,
    /// Width of the absolutely separable interval for `ABS_SEP_SPECTRUM`;
    /// a lower bound on the k = 1 ratio.
    pub abs_sep_width: f64,
    pub violations: usize,
}

pub fn abs_sep_width() -> CliResult<f64> {
    Ok(abs_sep_extremum(&ABS_SEP_SPECTRUM, Sense::Max)? - abs_sep_extremum(&ABS_SEP_SPECTRUM, Sense::Min)?)
}

pub fn cmd_bounds(dims: &[usize], max_k: usize) -> CliResult<BoundsOutput> {
    let profile = DimensionProfile::new(dims.to_vec())?;
    if max_k == 0 {
        return Err(CliError::Unsupported("k must be at least 1".into()));
    }
    let instances = named_instances();
    let mut rows = Vec::new();
    for k in 1..=max_k {
        let b = theorem3_bound(&profile, k)?;
        let matching: Vec<(String, f64)> = instances
            .iter()
            .filter(|i| i.observables.len() == k && i.observables.profile() == &profile)
            .map(|i| (i.name.to_string(), i.expected_ratio))
            .collect();
        let violated = matching.iter().any(|(_, r)| b.value > *r);
        rows.push(BoundRow {
            k,
            bound: b.value,
            formula: b.formula_id,
            instances: matching,
            violated,
        });
    }
    let width = abs_sep_width()?;
    let mut violations = rows.iter().filter(|r| r.violated).count();
    if profile.is_two_qubit() {
        // The k = 1 instances must also respect the absolutely separable bound.
        violations += rows
            .iter()
            .filter(|r| r.k == 1)
            .flat_map(|r| &r.instances)
            .filter(|(_, ratio)| *ratio < width - 1e-9)
            .count();
    }
    Ok(BoundsOutput {
        meta: Meta::new("bounds", 0).with("dims", format!("{dims:?}")).with("max_k", max_k),
        dims: dims.to_vec(),
        rows,
        abs_sep_width: width,
        violations,
    })
}

impl Report for BoundsOutput {
    fn meta(&self) -> &Meta {
        &self.meta
    }

    fn csv(&self) -> CliResult<String> {
        #[derive(Serialize)]
        struct Flat {
            k: usize,
            bound: f64,
            formula: FormulaId,
            instance: String,
            instance_ratio: Option<f64>,
            violated: bool,
        }
        let mut flat = Vec::new();
        for r in &self.rows {
            let names: Vec<(String, Option<f64>)> = if r.instances.is_empty() {
                vec![(String::new(), None)]
            } else {
                r.instances.iter().map(|(n, v)| (n.clone(), Some(*v))).collect()
            };
            for (instance, instance_ratio) in names {
                flat.push(Flat {
                    k: r.k,
                    bound: r.bound,
                    formula: r.formula,
                    instance,
                    instance_ratio,
                    violated: r.violated,
                });
            }
        }
        Ok(csv_table(&self.meta, &flat)? + &format!("# abs_sep_width={}\n", self.abs_sep_width))
    }

    fn text(&self) -> CliResult<String> {
        let rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| {
                let inst = r
                    .instances
                    .iter()
                    .map(|(n, v)| format!("{n} {v:.6}"))
                    .collect::<Vec<_>>()
                    .join(", ");
                vec![
                    r.k.to_string(),
                    format!("{:.6}", r.bound),
                    format!("{:?}", r.formula),
                    if inst.is_empty() { "-".into() } else { inst },
                    if r.violated { "VIOLATED".into() } else { "ok".into() },
                ]
            })
            .collect();
        Ok(text_table(&["k", "bound", "formula", "instances", "check"], &rows)
            + &format!("absolutely separable width (k = 1 bound): {:.10}\n", self.abs_sep_width))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InstanceRow {
    pub name: String,
    pub dims: Vec<usize>,
    pub k: usize,
    pub expected_ratio: f64,
    pub bound: f64,
    pub numeric_estimate: Option<f64>,
    pub numeric_lower: Option<f64>,
    pub numeric_upper: Option<f64>,
    pub bracket_contains: Option<bool>,
    pub violated: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct InstancesOutput {
    pub meta: Meta,
    pub rows: Vec<InstanceRow>,
    pub violations: usize,
}

pub fn cmd_instances(cfg: &RatioConfig) -> CliResult<InstancesOutput> {
    let mut rows = Vec::new();
    for inst in named_instances() {
        let k = inst.observables.len();
        let bound = theorem3_bound(inst.observables.profile(), k)?.value;
        let mut row = InstanceRow {
            name: inst.name.to_string(),
            dims: inst.observables.profile().local_dims().to_vec(),
            k,
            expected_ratio: inst.expected_ratio,
            bound,
            numeric_estimate: None,
            numeric_lower: None,
            numeric_upper: None,
            bracket_contains: None,
            violated: bound > inst.expected_ratio,
        };
        if inst.numeric {
            let r = volume_ratio(&inst.observables, cfg)?.report.ratio;
            row.numeric_estimate = Some(r.estimate);
            row.numeric_lower = Some(r.lower);
            row.numeric_upper = Some(r.upper);
            row.bracket_contains = Some(r.contains(inst.expected_ratio));
            row.violated |= bound > r.upper;
        }
        rows.push(row);
    }
    let violations = rows.iter().filter(|r| r.violated).count();
    Ok(InstancesOutput {
        meta: Meta::new("instances", cfg.seed)
            .with("directions", cfg.directions)
            .with("mc_samples", cfg.mc_samples)
            .with("sep_grid", cfg.sep.grid_per_axis),
        rows,
        violations,
    })
}

impl Report for InstancesOutput {
    fn meta(&self) -> &Meta {
        &self.meta
    }

    fn csv(&self) -> CliResult<String> {
        #[derive(Serialize)]
        struct Flat<'a> {
            name: &'a str,
            k: usize,
            expected_ratio: f64,
            bound: f64,
            numeric_estimate: Option<f64>,
            numeric_lower: Option<f64>,
            numeric_upper: Option<f64>,
            bracket_contains: Option<bool>,
            violated: bool,
        }
        let flat: Vec<Flat> = self
            .rows
            .iter()
            .map(|r| Flat {
                name: &r.name,
                k: r.k,
                expected_ratio: r.expected_ratio,
                bound: r.bound,
                numeric_estimate: r.numeric_estimate,
                numeric_lower: r.numeric_lower,
                numeric_upper: r.numeric_upper,
                bracket_contains: r.bracket_contains,
                violated: r.violated,
            })
            .collect();
        csv_table(&self.meta, &flat)
    }

    fn text(&self) -> CliResult<String> {
        let rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| {
                vec![
                    r.name.clone(),
                    r.k.to_string(),
                    format!("{:.6}", r.expected_ratio),
                    opt(r.numeric_estimate),
                    match (r.numeric_lower, r.numeric_upper) {
                        (Some(lo), Some(hi)) => format!("[{lo:.4}, {hi:.4}]"),
                        _ => "-".into(),
                    },
                    format!("{:.6}", r.bound),
                    if r.violated { "VIOLATED".into() } else { "ok".into() },
                ]
            })
            .collect();
        Ok(text_table(&["instance", "k", "ratio", "numeric", "bracket", "bound", "check"], &rows))
    }
}
