//! File formats.
//!
//! Series CSV: first column holds channel identifiers, first row holds
//! ISO-8601 timestamps; each remaining cell is one sample. Alarm and truth
//! files are JSON lines (one object per line). Densities are two-column
//! CSVs of (bin_center, mass).

use std::path::Path;

use chrono::{DateTime, Utc};
use nalgebra::DMatrix;
use specad_core::detect::{AlarmRecord, IndicatorSeries, TruthEvent};
use specad_core::spectra::SpectralDensity;
use specad_core::window::TimeSeriesSet;

use crate::errors::{io_error, CliError, CliResult, Classify, Kind};

fn format_timestamp(seconds: i64) -> CliResult<String> {
    DateTime::<Utc>::from_timestamp(seconds, 0)
        .map(|dt| dt.to_rfc3339())
        .ok_or_else(|| io_error(format!("timestamp {seconds} is outside the representable range")))
}

fn parse_timestamp(text: &str) -> CliResult<i64> {
    DateTime::parse_from_rfc3339(text.trim())
        .map(|dt| dt.timestamp())
        .classify(Kind::Io, format!("parsing timestamp '{text}' (expected ISO-8601)"))
}

pub fn write_time_series(path: &Path, data: &TimeSeriesSet) -> CliResult<()> {
    let mut writer = csv::Writer::from_path(path)
        .classify(Kind::Io, format!("creating {}", path.display()))?;
    let mut header = Vec::with_capacity(data.n_samples() + 1);
    header.push("channel".to_string());
    for &ts in &data.timestamps {
        header.push(format_timestamp(ts)?);
    }
    let write_ctx = || format!("writing {}", path.display());
    writer.write_record(&header).classify(Kind::Io, write_ctx())?;
    for (i, name) in data.channels.iter().enumerate() {
        let mut record = Vec::with_capacity(data.n_samples() + 1);
        record.push(name.clone());
        for j in 0..data.n_samples() {
            record.push(format!("{:.17e}", data.values[(i, j)]));
        }
        writer.write_record(&record).classify(Kind::Io, write_ctx())?;
    }
    writer.flush().classify(Kind::Io, write_ctx())
}

pub fn read_time_series(path: &Path) -> CliResult<TimeSeriesSet> {
    let read_ctx = || format!("reading {}", path.display());
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .from_path(path)
        .classify(Kind::Io, read_ctx())?;

    let mut records = reader.records();
    let header = match records.next() {
        Some(rec) => rec.classify(Kind::Io, read_ctx())?,
        None => return Err(io_error(format!("{} is empty", path.display()))),
    };
    if header.len() < 2 {
        return Err(io_error(format!(
            "{} has no sample columns; expected a channel column plus timestamps",
            path.display()
        )));
    }
    let timestamps: Vec<i64> = header
        .iter()
        .skip(1)
        .map(parse_timestamp)
        .collect::<CliResult<_>>()?;

    let mut channels = Vec::new();
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for record in records {
        let record = record.classify(Kind::Io, read_ctx())?;
        let mut fields = record.iter();
        let name = fields
            .next()
            .ok_or_else(|| io_error(format!("{}: blank data row", path.display())))?;
        let row: Vec<f64> = fields
            .map(|cell| {
                cell.trim().parse::<f64>().classify(
                    Kind::Io,
                    format!("{}: channel {name} has non-numeric cell '{cell}'", path.display()),
                )
            })
            .collect::<CliResult<_>>()?;
        if row.len() != timestamps.len() {
            return Err(io_error(format!(
                "{}: channel {name} has {} samples but the header lists {} timestamps",
                path.display(),
                row.len(),
                timestamps.len()
            )));
        }
        channels.push(name.to_string());
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(io_error(format!("{} contains no channel rows", path.display())));
    }
    let n = rows.len();
    let t = timestamps.len();
    let values = DMatrix::from_fn(n, t, |i, j| rows[i][j]);
    TimeSeriesSet::new(channels, timestamps, values)
        .map_err(|e| CliError { kind: Kind::Io, source: anyhow::Error::new(e) })
}

/// One row per evaluated window: the raw indicators, their confidences, and
/// the current top location candidates.
pub fn write_indicators(
    path: &Path,
    series: &IndicatorSeries,
    channel_names: &[String],
    top_k: usize,
) -> CliResult<()> {
    let ctx = || format!("writing {}", path.display());
    let mut writer =
        csv::Writer::from_path(path).classify(Kind::Io, format!("creating {}", path.display()))?;
    let mut header = vec![
        "time".to_string(),
        "n_phi".to_string(),
        "b_hat".to_string(),
        "combined".to_string(),
        "factor_count".to_string(),
        "confidence_n_phi".to_string(),
        "confidence_b_hat".to_string(),
        "confidence_combined".to_string(),
        "armed".to_string(),
    ];
    for k in 1..=top_k {
        header.push(format!("located_{k}"));
    }
    writer.write_record(&header).classify(Kind::Io, ctx())?;
    for w in 0..series.len() {
        let mut record = vec![
            series.times[w].to_string(),
            format!("{:.9e}", series.n_phi[w]),
            format!("{:.9e}", series.b_hat[w]),
            format!("{:.9e}", series.combined[w]),
            series.factor_count[w].to_string(),
            format!("{:.6}", series.confidence_n_phi[w]),
            format!("{:.6}", series.confidence_b_hat[w]),
            format!("{:.6}", series.confidence_combined[w]),
            series.armed[w].to_string(),
        ];
        for idx in series.top_channels(w, top_k) {
            record.push(channel_names.get(idx).cloned().unwrap_or_else(|| idx.to_string()));
        }
        while record.len() < header.len() {
            record.push(String::new());
        }
        writer.write_record(&record).classify(Kind::Io, ctx())?;
    }
    writer.flush().classify(Kind::Io, ctx())
}

/// One row per evaluated window, one column per channel, cells holding the
/// location profile.
pub fn write_location_profile(
    path: &Path,
    series: &IndicatorSeries,
    channel_names: &[String],
) -> CliResult<()> {
    let ctx = || format!("writing {}", path.display());
    let mut writer =
        csv::Writer::from_path(path).classify(Kind::Io, format!("creating {}", path.display()))?;
    let mut header = vec!["time".to_string()];
    header.extend(channel_names.iter().cloned());
    writer.write_record(&header).classify(Kind::Io, ctx())?;
    for w in 0..series.len() {
        let mut record = vec![series.times[w].to_string()];
        for value in &series.eta[w] {
            record.push(format!("{value:.9e}"));
        }
        writer.write_record(&record).classify(Kind::Io, ctx())?;
    }
    writer.flush().classify(Kind::Io, ctx())
}

pub fn write_alarms(path: &Path, alarms: &[AlarmRecord]) -> CliResult<()> {
    write_json_lines(path, alarms)
}

pub fn write_truth(path: &Path, events: &[TruthEvent]) -> CliResult<()> {
    write_json_lines(path, events)
}

fn write_json_lines<T: serde::Serialize>(path: &Path, items: &[T]) -> CliResult<()> {
    let mut out = String::new();
    for item in items {
        let line = serde_json::to_string(item)
            .classify(Kind::Io, format!("serializing record for {}", path.display()))?;
        out.push_str(&line);
        out.push('\n');
    }
    std::fs::write(path, out).classify(Kind::Io, format!("writing {}", path.display()))
}

fn read_json_lines<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<Vec<T>> {
    let text = std::fs::read_to_string(path)
        .classify(Kind::Io, format!("reading {}", path.display()))?;
    text.lines()
        .enumerate()
        .filter(|(_, line)| !line.trim().is_empty())
        .map(|(ln, line)| {
            serde_json::from_str(line)
                .classify(Kind::Io, format!("{} line {}: malformed record", path.display(), ln + 1))
        })
        .collect()
}

pub fn read_alarms(path: &Path) -> CliResult<Vec<AlarmRecord>> {
    read_json_lines(path)
}

pub fn read_truth(path: &Path) -> CliResult<Vec<TruthEvent>> {
    read_json_lines(path)
}

pub fn write_density(path: &Path, density: &SpectralDensity) -> CliResult<()> {
    let ctx = || format!("writing {}", path.display());
    let mut writer =
        csv::Writer::from_path(path).classify(Kind::Io, format!("creating {}", path.display()))?;
    writer.write_record(["bin_center", "mass"]).classify(Kind::Io, ctx())?;
    for (center, mass) in density.bin_centers().iter().zip(&density.mass) {
        writer
            .write_record([format!("{center:.9e}"), format!("{mass:.9e}")])
            .classify(Kind::Io, ctx())?;
    }
    writer.flush().classify(Kind::Io, ctx())
}

/// Long-format distance surface: one row per (factor count, lag) cell.
pub fn write_surface(
    path: &Path,
    candidates: &[usize],
    lag_grid: &[f64],
    surface: &[Vec<f64>],
) -> CliResult<()> {
    let ctx = || format!("writing {}", path.display());
    let mut writer =
        csv::Writer::from_path(path).classify(Kind::Io, format!("creating {}", path.display()))?;
    writer.write_record(["factor_count", "lag", "distance"]).classify(Kind::Io, ctx())?;
    for (i, &p) in candidates.iter().enumerate() {
        for (j, &lag) in lag_grid.iter().enumerate() {
            writer
                .write_record([p.to_string(), format!("{lag:.4}"), format!("{:.9e}", surface[i][j])])
                .classify(Kind::Io, ctx())?;
        }
    }
    writer.flush().classify(Kind::Io, ctx())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_round_trip_preserves_everything() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("series.csv");
        let values = DMatrix::from_row_slice(2, 3, &[1.5, -2.25, 0.125, 4.0, 5.5, -6.75]);
        let data = TimeSeriesSet::new(
            vec!["ch01".into(), "ch02".into()],
            vec![0, 60, 120],
            values,
        )
        .unwrap();
        write_time_series(&path, &data).unwrap();
        let back = read_time_series(&path).unwrap();
        assert_eq!(back.channels, data.channels);
        assert_eq!(back.timestamps, data.timestamps);
        assert_eq!(back.values, data.values);
    }

    #[test]
    fn timestamp_formats_as_iso8601() {
        assert_eq!(format_timestamp(0).unwrap(), "1970-01-01T00:00:00+00:00");
        assert_eq!(parse_timestamp("1970-01-01T00:02:00Z").unwrap(), 120);
    }

    #[test]
    fn alarm_json_lines_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("alarms.jsonl");
        let alarms = vec![AlarmRecord {
            start_time: 501,
            end_time: 530,
            peak_time: 510,
            window_count: 30,
            indicator: "n_phi".into(),
            confidence: 0.999,
            leading_channel: 20,
            located_channels: Vec::new(),
        }];
        write_alarms(&path, &alarms).unwrap();
        let back = read_alarms(&path).unwrap();
        assert_eq!(back.len(), 1);
        assert_eq!(back[0].start_time, 501);
        assert_eq!(back[0].leading_channel, 20);
    }

    #[test]
    fn malformed_cell_is_an_io_error() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.csv");
        std::fs::write(
            &path,
            "channel,1970-01-01T00:00:00Z,1970-01-01T00:00:01Z\nch01,1.0,oops\n",
        )
        .unwrap();
        let err = read_time_series(&path).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }
}
