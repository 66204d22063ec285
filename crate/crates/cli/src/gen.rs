use std::io::Write;

use anyhow::{bail, Context, Result};
use hypercover::generate::{barabasi_albert, erdos_renyi, path, star};

use crate::args::{GenArgs, GenKind};
use crate::report::{GenRecord, GEN_SCHEMA};

pub fn gen(args: &GenArgs) -> Result<()> {
    if args.n == 0 {
        bail!("--n must be positive");
    }
    match args.kind {
        GenKind::Ba if args.m.is_none() => bail!("--kind ba needs --m"),
        GenKind::Er if args.p.is_none() => bail!("--kind er needs --p"),
        _ => {}
    }
    if args.m.is_some() && args.kind != GenKind::Ba {
        bail!("--m only applies to ba");
    }
    if args.p.is_some() && args.kind != GenKind::Er {
        bail!("--p only applies to er");
    }
    let edges = match args.kind {
        GenKind::Ba => barabasi_albert(args.n, args.m.unwrap(), args.seed)?,
        GenKind::Er => erdos_renyi(args.n, args.p.unwrap(), args.seed)?,
        GenKind::Path => path(args.n),
        GenKind::Star => star(args.n),
    };

    let mut text = String::with_capacity(edges.len() * 12);
    for (u, v) in &edges {
        text.push_str(&format!("{u} {v}\n"));
    }
    match &args.out {
        Some(out) => {
            std::fs::write(out, text).with_context(|| format!("cannot write {}", out.display()))?;
            let record = GenRecord {
                schema: GEN_SCHEMA,
                kind: args.kind,
                n: args.n,
                edges: edges.len(),
                out: out.display().to_string(),
            };
            crate::emit(&record, None)
        }
        None => {
            std::io::stdout().lock().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}
