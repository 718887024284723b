use comdyn_core::commutant::{CandidateSpace, CommutantResult};
use comdyn_core::PolyMap;
use rayon::prelude::*;

use crate::error::{CliError, Result};

const CHUNK: u128 = 4096;

/// Tests every candidate on a rayon pool with `threads` workers (the global
/// pool when `None`). The result is the same as a sequential run.
pub fn run_parallel<S: CandidateSpace + ?Sized>(space: &S, threads: Option<usize>) -> Result<CommutantResult> {
    let work = || -> Result<CommutantResult> {
        let len = space.len();
        let chunks = u64::try_from(len.div_ceil(CHUNK)).map_err(|_| CliError::Usage(String::from("search too large")))?;
        let found: Vec<Vec<PolyMap>> = (0..chunks)
            .into_par_iter()
            .map(|c| {
                let start = c as u128 * CHUNK;
                let end = (start + CHUNK).min(len);
                let mut out = Vec::new();
                for idx in start..end {
                    if let Some(g) = space.test(idx)? {
                        out.push(g);
                    }
                }
                Ok(out)
            })
            .collect::<std::result::Result<_, comdyn_core::Error>>()?;
        Ok(space.finish(found.into_iter().flatten().collect()))
    };
    match threads {
        None => work(),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
            .map_err(|e| CliError::Usage(e.to_string()))?
            .install(work),
    }
}
