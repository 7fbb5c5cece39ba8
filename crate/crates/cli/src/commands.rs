use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;
use std::process::ExitCode;

use anyhow::{Context, Result};
use serde::Serialize;

use fibp_core::metrics::compare_csv;
use fibp_core::tables::{default_cover, tables};
use fibp_core::{
    build_system, check_lemma3, check_lemma4, compare, embed, extract, find_alpha,
    generate_sequence, read_pgm, verify_bounds, write_pgm, EmbedConfig, GrayImage, Payload,
    PgmFormat, RatioSequence, SystemKind, TraversalMode,
};

use crate::bits;
use crate::{Command, Format, Mode, PgmOut};

/// Operation failure that is not a library error.
#[derive(Debug)]
pub struct Failure {
    pub kind: &'static str,
    pub message: String,
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for Failure {}

fn fail(kind: &'static str, message: impl Into<String>) -> anyhow::Error {
    Failure {
        kind,
        message: message.into(),
    }
    .into()
}

fn read_input(path: &Path) -> Result<Vec<u8>> {
    if path == Path::new("-") {
        let mut buf = Vec::new();
        io::stdin().read_to_end(&mut buf)?;
        Ok(buf)
    } else {
        fs::read(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn write_output(path: &Path, bytes: &[u8]) -> Result<()> {
    if path == Path::new("-") {
        let mut out = io::stdout().lock();
        out.write_all(bytes)?;
        out.flush()?;
        Ok(())
    } else {
        fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))
    }
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn system(name: &str, depth: u32) -> Result<fibp_core::NumberSystem> {
    let kind: SystemKind = name.parse()?;
    Ok(build_system(kind, depth)?)
}

fn mode(m: Mode) -> TraversalMode {
    match m {
        Mode::Sequential => TraversalMode::Sequential,
        Mode::Permuted => TraversalMode::SeededPermutation,
    }
}

pub fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Gen { p, n, format } => {
            let seq = generate_sequence(p, n)?;
            let terms: Vec<String> = seq.terms().iter().map(ToString::to_string).collect();
            let out = match format {
                Format::Text => terms.join(" ") + "\n",
                Format::Csv => {
                    let mut s = String::from("p,n,F\n");
                    for (i, t) in terms.iter().enumerate() {
                        let _ = writeln!(s, "{p},{i},{t}");
                    }
                    s
                }
                Format::Json => json(&serde_json::json!({ "p": p, "terms": terms }))?,
            };
            write_output(Path::new("-"), out.as_bytes())?;
        }

        Command::Root {
            p,
            tol,
            precision,
            format,
        } => {
            let root = find_alpha(p, tol)?;
            let out = match format {
                Format::Json => json(&root)?,
                Format::Csv => format!("p,alpha\n{p},{root:.precision$}\n"),
                Format::Text => format!("{root:.precision$}\n"),
            };
            write_output(Path::new("-"), out.as_bytes())?;
        }

        Command::Ratios {
            p,
            n,
            tol,
            precision,
            format,
            out,
        } => {
            let seq = generate_sequence(p, n)?;
            let ratios = RatioSequence::from_sequence(&seq);
            let alpha = find_alpha(p, tol)?;
            let text = match format {
                Format::Json => json(&serde_json::json!({
                    "p": p,
                    "alpha": alpha,
                    "betas": ratios.betas,
                    "interleaving": seq.interleaving(),
                }))?,
                _ => ratios.to_csv(alpha.value, precision),
            };
            write_output(&out, text.as_bytes())?;
        }

        Command::VerifyBounds {
            p,
            n,
            tol,
            precision,
            format,
            out,
        } => {
            let report = verify_bounds(p, n, tol)?;
            let text = match format {
                Format::Json => json(&report)?,
                _ => report.to_csv(precision),
            };
            write_output(&out, text.as_bytes())?;
            if !report.undecided.is_empty() {
                return Err(fail(
                    "bounds_undecided",
                    format!(
                        "{} comparisons undecided at tolerance {tol}; tighten --tol",
                        report.undecided.len()
                    ),
                ));
            }
            if !report.violations.is_empty() {
                return Err(fail(
                    "bounds_violated",
                    format!("{} bound violations", report.violations.len()),
                ));
            }
        }

        Command::Lemmas {
            k_max,
            p_max,
            tol,
            format,
        } => {
            let l3 = check_lemma3(k_max, tol)?;
            let l4 = check_lemma4(k_max, p_max)?;
            let far_below_first = match (l3.first(), l3.last()) {
                (Some(a), Some(b)) => b.alpha_k - 1.0 < a.alpha_k - 1.0,
                _ => false,
            };
            let passed = l3.iter().all(|r| r.passes()) && l4.passes() && far_below_first;
            let text = match format {
                Format::Json => json(&serde_json::json!({
                    "lemma3": l3,
                    "lemma4": l4,
                    "last_root_excess_below_first": far_below_first,
                    "passed": passed,
                }))?,
                _ => {
                    let mut s = String::from(
                        "k,alpha_k,decreasing,limit_proxy,midpoint,power_below,power_above\n",
                    );
                    for r in &l3 {
                        let _ = writeln!(
                            s,
                            "{},{:.6},{},{},{},{},{}",
                            r.k,
                            r.alpha_k,
                            r.decreasing,
                            r.limit_proxy,
                            r.midpoint,
                            r.power_below,
                            r.power_above
                        );
                    }
                    let _ = writeln!(
                        s,
                        "radical_chain={} root_below_radical={} descending_powers={} ascending_powers={}",
                        l4.radical_chain.iter().all(|x| x.holds),
                        l4.root_below_radical.iter().all(|x| x.holds),
                        l4.descending_powers.iter().all(|x| x.holds),
                        l4.ascending_powers.iter().all(|x| x.holds),
                    );
                    let _ = writeln!(s, "passed={passed}");
                    s
                }
            };
            write_output(Path::new("-"), text.as_bytes())?;
            if !passed {
                return Err(fail("lemma_failed", "at least one lemma check failed"));
            }
        }

        Command::Weights {
            system: name,
            depth,
            format,
        } => {
            let sys = system(&name, depth)?;
            let text = match format {
                Format::Json => json(&sys)?,
                Format::Text => {
                    let w: Vec<String> = sys.weights().iter().map(u64::to_string).collect();
                    w.join(" ") + "\n"
                }
                Format::Csv => sys.weights_csv(),
            };
            write_output(Path::new("-"), text.as_bytes())?;
        }

        Command::Decompose {
            system: name,
            value,
            depth,
        } => {
            let sys = system(&name, depth)?;
            let cw = sys.decompose(value)?;
            write_output(Path::new("-"), format!("{cw}\n").as_bytes())?;
        }

        Command::Embed {
            cover,
            out,
            system: name,
            plane,
            seed,
            message,
            bits: count,
            mode: m,
            pgm,
        } => {
            let cover = read_pgm(&read_input(&cover)?)?;
            let sys = system(&name, cover.depth())?;
            let cfg = EmbedConfig::new(sys, plane, seed, mode(m))?;
            let mut msg = bits::unpack(&read_input(&message)?);
            if let Some(count) = count {
                if count > msg.len() {
                    return Err(fail(
                        "invalid_input",
                        format!(
                            "--bits {count} exceeds the {} bits in the message",
                            msg.len()
                        ),
                    ));
                }
                msg.truncate(count);
            }
            let res = embed(&cover, &msg, &cfg)?;
            let format = match pgm {
                PgmOut::P5 => PgmFormat::P5,
                PgmOut::P2 => PgmFormat::P2,
            };
            write_output(&out, &write_pgm(&res.stego_image, format))?;
            eprintln!(
                "embedded={} skipped={} capacity_ratio={:.6}",
                res.embedded_count, res.skipped_pixels, res.capacity_ratio
            );
        }

        Command::Extract {
            stego,
            count,
            system: name,
            plane,
            seed,
            mode: m,
            out,
        } => {
            let stego = read_pgm(&read_input(&stego)?)?;
            let sys = system(&name, stego.depth())?;
            let cfg = EmbedConfig::new(sys, plane, seed, mode(m))?;
            let bits = extract(&stego, count, &cfg)?;
            write_output(&out, &bits::pack(&bits))?;
        }

        Command::Compare {
            cover,
            planes,
            systems,
            seed,
            message,
            precision,
            format,
            out,
        } => {
            let cover = load_or_synth(cover.as_deref(), seed)?;
            let kinds = systems
                .iter()
                .map(|s| s.parse::<SystemKind>())
                .collect::<Result<Vec<_>, _>>()?;
            let payload = match message {
                Some(path) => Payload::Bits(bits::unpack(&read_input(&path)?)),
                None => Payload::FullCapacity,
            };
            let rows = compare(&cover, &payload, &planes, &kinds, seed);
            let text = match format {
                Format::Json => json(&rows)?,
                _ => compare_csv(&rows, precision),
            };
            write_output(&out, text.as_bytes())?;
            for row in &rows {
                if let Err(e) = &row.outcome {
                    eprintln!(
                        "{}",
                        serde_json::json!({
                            "error": e.kind(),
                            "message": e.to_string(),
                            "system": row.system.to_string(),
                            "plane": row.plane,
                        })
                    );
                }
            }
        }

        Command::Tables {
            out_dir,
            seed,
            precision,
        } => write_tables(&out_dir, seed, precision)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn load_or_synth(cover: Option<&Path>, seed: u64) -> Result<GrayImage> {
    Ok(match cover {
        Some(path) => read_pgm(&read_input(path)?)?,
        None => default_cover(seed)?,
    })
}

fn write_tables(dir: &Path, seed: u64, precision: usize) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    for (name, contents) in tables(seed, precision)? {
        write_output(&dir.join(name), contents.as_bytes())?;
    }
    Ok(())
}
