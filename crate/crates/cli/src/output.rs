//! CSV writers. Floats use 17 significant digits so rows round-trip exactly.

use std::io::Write;

use qdfe::DiscordPoint;

use crate::error::CliError;

pub const CURVE_HEADER: [&str; 7] = ["t", "d_a", "d_b", "mutual_info", "classical", "discord", "regime"];

pub fn fmt_f64(x: f64) -> String {
    if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:.16e}")
    }
}

fn point_fields(p: &DiscordPoint) -> [String; 7] {
    [
        fmt_f64(p.t),
        fmt_f64(p.d_a),
        fmt_f64(p.d_b),
        fmt_f64(p.mutual_info),
        fmt_f64(p.classical),
        fmt_f64(p.discord),
        p.regime.to_string(),
    ]
}

fn writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out)
}

pub fn write_curve<W: Write>(out: W, points: &[DiscordPoint]) -> Result<(), CliError> {
    let mut w = writer(out);
    w.write_record(CURVE_HEADER)?;
    for p in points {
        w.write_record(point_fields(p))?;
    }
    w.flush()?;
    Ok(())
}

/// Curves keyed by leading columns: `prefix_header` names them, each row
/// carries its own prefix values.
pub fn write_keyed<W: Write>(
    out: W,
    prefix_header: &[&str],
    rows: &[(Vec<String>, Vec<DiscordPoint>)],
) -> Result<(), CliError> {
    let mut w = writer(out);
    let header: Vec<&str> = prefix_header.iter().copied().chain(CURVE_HEADER).collect();
    w.write_record(&header)?;
    for (prefix, points) in rows {
        for p in points {
            w.write_record(prefix.iter().cloned().chain(point_fields(p)))?;
        }
    }
    w.flush()?;
    Ok(())
}

/// One critical time per row; an absent plateau is written as `none`. With
/// no swept parameter the leading column is dropped.
pub fn write_critical<W: Write>(
    out: W,
    param: Option<&str>,
    rows: &[(f64, Option<qdfe::dfe::CriticalTime>)],
) -> Result<(), CliError> {
    let mut w = writer(out);
    let lead = |v: f64| param.map(|_| fmt_f64(v));
    w.write_record(param.into_iter().chain(["t_p", "method", "residual"]))?;
    for (v, ct) in rows {
        let fields = match ct {
            Some(ct) => [
                fmt_f64(ct.t_p),
                match ct.method {
                    qdfe::dfe::CriticalMethod::ClosedZeroT => "closed".to_string(),
                    qdfe::dfe::CriticalMethod::Bisection => "bisection".to_string(),
                },
                fmt_f64(ct.residual),
            ],
            None => ["none".into(), "none".into(), "none".into()],
        };
        w.write_record(lead(*v).into_iter().chain(fields))?;
    }
    w.flush()?;
    Ok(())
}
