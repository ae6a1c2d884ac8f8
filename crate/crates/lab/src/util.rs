//! Seeding, worker-pool, and formatting helpers shared by the runners.

use quadlab_core::{CoreError, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

/// splitmix64 finalizer, used to derive independent per-unit seeds.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Counter-based generator: the stream for unit `index` depends only on
/// `(seed, index)`, never on which worker drew it or in what order.
pub fn unit_rng(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(mix(seed ^ mix(index)))
}

/// Reads the worker count from `QUADLAB_WORKERS` (default 1).
pub fn worker_count() -> Result<usize> {
    match std::env::var("QUADLAB_WORKERS") {
        Err(std::env::VarError::NotPresent) => Ok(1),
        Err(_) => Err(CoreError::Config(
            "QUADLAB_WORKERS is not valid unicode".into(),
        )),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(CoreError::Config(format!(
                "QUADLAB_WORKERS must be a positive integer, got {s:?}"
            ))),
        },
    }
}

/// Maps `f` over `items` on up to `workers` threads and returns results
/// in input order, so the worker count never changes output bytes. On
/// error the failure with the smallest index is reported.
pub fn map_indexed<T, U, F>(items: &[T], workers: usize, f: F) -> Result<Vec<U>>
where
    T: Sync,
    U: Send,
    F: Fn(usize, &T) -> Result<U> + Sync,
{
    if workers <= 1 || items.len() <= 1 {
        return items.iter().enumerate().map(|(i, t)| f(i, t)).collect();
    }
    let cursor = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<Result<U>>>> =
        items.iter().map(|_| Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..workers.min(items.len()) {
            scope.spawn(|| loop {
                let i = cursor.fetch_add(1, Ordering::Relaxed);
                if i >= items.len() {
                    break;
                }
                *slots[i].lock().unwrap() = Some(f(i, &items[i]));
            });
        }
    });
    let mut out = Vec::with_capacity(items.len());
    for slot in slots {
        out.push(slot.into_inner().unwrap().expect("worker filled every slot")?);
    }
    Ok(out)
}

/// Canonical float formatting for CSV cells: shortest roundtrip form.
pub fn fmt_f64(v: f64) -> String {
    format!("{v}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn unit_streams_are_reproducible_and_distinct() {
        let a: f64 = unit_rng(7, 0).r#gen();
        let b: f64 = unit_rng(7, 0).r#gen();
        let c: f64 = unit_rng(7, 1).r#gen();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn map_indexed_order_is_worker_independent() {
        let items: Vec<u64> = (0..40).collect();
        let f = |i: usize, t: &u64| -> Result<f64> {
            Ok(unit_rng(3, *t).r#gen::<f64>() + i as f64)
        };
        let one = map_indexed(&items, 1, f).unwrap();
        let four = map_indexed(&items, 4, f).unwrap();
        assert_eq!(one, four);
    }

    #[test]
    fn map_indexed_reports_earliest_error() {
        let items: Vec<u64> = (0..10).collect();
        let err = map_indexed(&items, 3, |i, _| -> Result<u64> {
            if i >= 4 {
                Err(CoreError::Domain(format!("unit {i}")))
            } else {
                Ok(i as u64)
            }
        })
        .unwrap_err();
        assert!(err.to_string().contains("unit 4"));
    }
}
