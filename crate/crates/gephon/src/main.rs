use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use gephon::reproduce::zeeman_plot_spec;
use gephon::svg::PlotSpec;
use gephon::{emit_svg, reproduce, sweeps, write_output, RunConfig, RunError, SweepResult, TableId};

#[derive(Parser, Debug)]
#[command(name = "gephon", version, about = "Sweeps and table reproduction for phonon-coupled Ge hole-spin qubit models")]
struct Cli {
    /// Configuration file (`key = value` lines); defaults apply to omitted keys.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory; overrides `output.dir`.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Reserved; every computation is deterministic.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for parallel sweeps (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Exit with status 3 when a reproduced cell does not match.
    #[arg(long, global = true)]
    strict: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Recompute a published table and compare cell by cell.
    Reproduce {
        /// a1, a2, zeeman_fig3 or benchmarks
        table: TableId,
    },
    /// g-factor, coupling and Zeeman splitting versus vertical field.
    SweepEfield,
    /// T1, Q, linewidth and thermal derating versus phonon frequency.
    SweepFrequency,
    /// Phononic-crystal band structure and gap report.
    Bands,
    /// Cavity overlap, coupling and relaxation sweeps.
    Overlap,
    /// Two-qubit bus rates, gate times and oracle check.
    Twoqubit,
    /// Effective deformation potential for the reference coupling.
    Calibrate,
    /// Print the fully resolved configuration.
    ShowConfig,
    /// Render columns of a CSV result as an SVG line chart.
    Plot {
        /// CSV produced by one of the other commands.
        #[arg(long)]
        input: PathBuf,
        /// Column for the horizontal axis.
        #[arg(long)]
        x: String,
        /// Comma-separated columns to draw.
        #[arg(long, value_delimiter = ',', required = true)]
        y: Vec<String>,
        /// Shaded horizontal band `low,high` in y units.
        #[arg(long, value_delimiter = ',', num_args = 2)]
        band: Option<Vec<f64>>,
        #[arg(long, default_value = "")]
        title: String,
        /// Output file name inside the output directory.
        #[arg(long, default_value = "plot.svg")]
        output: String,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn save(dir: &std::path::Path, name: &str, result: &SweepResult) -> Result<(), RunError> {
    let path = write_output(dir, name, &result.to_csv())?;
    println!("wrote {}", path.display());
    Ok(())
}

fn run(cli: Cli) -> Result<(), RunError> {
    let cfg = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if cli.threads > 0 {
        // Fails only if a global pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global();
    }
    let out = cli.out.clone().unwrap_or_else(|| cfg.output_dir.clone());

    match cli.command {
        Command::Reproduce { table } => {
            let r = reproduce(table, &cfg)?;
            print!("{}", r.report());
            save(&out, &format!("reproduce_{}.csv", table.name()), &r.table)?;
            if table == TableId::ZeemanFig3 {
                let svg = emit_svg(&r.table, &zeeman_plot_spec(&r.table))?;
                println!("wrote {}", write_output(&out, "zeeman_fig3.svg", &svg)?.display());
            }
            if cli.strict && r.mismatches() > 0 {
                return Err(RunError::Mismatch(r.mismatches()));
            }
        }
        Command::SweepEfield => {
            let t = sweeps::sweep_efield(&cfg)?;
            save(&out, "sweep_efield.csv", &t)?;
            let band = cfg.conditions.band;
            let spec = PlotSpec::new("Larmor frequency versus vertical field", "e_z_mv_per_m", &["f_larmor_ghz"])
                .with_labels("E_z (MV/m)", "f (GHz)")
                .with_band(band.f_min, band.f_max, "microwave control band");
            println!("wrote {}", write_output(&out, "sweep_efield.svg", &emit_svg(&t, &spec)?)?.display());
        }
        Command::SweepFrequency => {
            let t = sweeps::sweep_frequency(&cfg)?;
            save(&out, "sweep_frequency.csv", &t)?;
            let spec =
                PlotSpec::new("Relaxation time versus phonon frequency", "f_ghz", &["t1_ms", "t1_thermal_ms"]).with_labels("f (GHz)", "T1 (ms)");
            println!("wrote {}", write_output(&out, "sweep_frequency.svg", &emit_svg(&t, &spec)?)?.display());
        }
        Command::Bands => {
            let b = sweeps::run_bands(&cfg)?;
            for w in &b.warnings {
                eprintln!("warning: {w}");
            }
            println!("{}", b.report());
            save(&out, "bands.csv", &b.bands)?;
            save(&out, "gaps.csv", &b.gaps)?;
            let ys: Vec<String> = (0..b.structure.n_bands()).map(|n| format!("f_band{n}")).collect();
            let y_refs: Vec<&str> = ys.iter().map(String::as_str).collect();
            let spec = PlotSpec::new("Band structure", "path_distance", &y_refs).with_labels("path distance (1/µm)", "f (GHz)");
            println!("wrote {}", write_output(&out, "bands.svg", &emit_svg(&b.bands, &spec)?)?.display());
        }
        Command::Overlap => {
            let o = sweeps::run_overlap(&cfg)?;
            if let Some((fa, fb, ratio)) = o.contrast_ratio {
                println!("O({fa} GHz)/O({fb} GHz) = {ratio:.4e}");
            }
            println!("sigma sweep maximum at {} nm ({})", o.sigma_best_nm, if o.sigma_interior_maximum { "interior" } else { "at an endpoint" });
            save(&out, "overlap_frequency.csv", &o.frequency)?;
            save(&out, "overlap_sigma.csv", &o.sigma)?;
            let spec = PlotSpec::new("Overlap versus qubit width", "sigma_nm", &["overlap"]).with_labels("sigma (nm)", "normalized overlap");
            println!("wrote {}", write_output(&out, "overlap_sigma.svg", &emit_svg(&o.sigma, &spec)?)?.display());
        }
        Command::Twoqubit => {
            let t = sweeps::run_twoqubit(&cfg)?;
            save(&out, "twoqubit.csv", &t)?;
        }
        Command::Calibrate => {
            let c = sweeps::calibrate(&cfg)?;
            println!("reference frequency: {} GHz", c.f_ghz);
            println!("overlap: {:.9e}", c.overlap);
            println!("zero-point strain: {:.9e}", c.eps_zp);
            println!("cavity.d_eff_uev = {:?}", c.d_eff_uev);
        }
        Command::ShowConfig => {
            print!("{}", cfg.canonical());
            println!("# config_sha256 = {}", cfg.hash());
        }
        Command::Plot { input, x, y, band, title, output } => {
            let text = std::fs::read_to_string(&input).map_err(|e| RunError::io(&input, e))?;
            let table = SweepResult::from_csv(&text)?;
            let y_refs: Vec<&str> = y.iter().map(String::as_str).collect();
            let mut spec = PlotSpec::new(&title, &x, &y_refs);
            if let Some(b) = band {
                spec = spec.with_band(b[0], b[1], "");
            }
            println!("wrote {}", write_output(&out, &output, &emit_svg(&table, &spec)?)?.display());
        }
    }
    Ok(())
}
