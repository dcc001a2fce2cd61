use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Args;
use saddlebench::game::{identity_game, matching_pennies, zero_game};
use saddlebench::{make_illcond_game, Game};

/// Where the game comes from: a JSON file or one of the named generators.
#[derive(Debug, Args)]
pub struct GameSource {
    /// Game JSON file
    pub game_file: Option<PathBuf>,
    /// The 3x3 game diag(g, 2g, 1)
    #[arg(long, value_name = "GAMMA")]
    pub illcond_gamma: Option<f64>,
    /// The 2x2 matching pennies game
    #[arg(long)]
    pub matching_pennies: bool,
    /// The d x d identity game
    #[arg(long, value_name = "D")]
    pub identity: Option<usize>,
    /// The all-zero n x m game
    #[arg(long, num_args = 2, value_names = ["N", "M"])]
    pub zero: Option<Vec<usize>>,
}

impl GameSource {
    pub fn load(&self) -> Result<(Game, String)> {
        let mut picks = Vec::new();
        if let Some(p) = &self.game_file {
            picks.push(format!("file:{}", p.display()));
        }
        if let Some(g) = self.illcond_gamma {
            picks.push(format!("illcond:{g}"));
        }
        if self.matching_pennies {
            picks.push("matching-pennies".into());
        }
        if let Some(d) = self.identity {
            picks.push(format!("identity:{d}"));
        }
        if let Some(z) = &self.zero {
            picks.push(format!("zero:{}x{}", z[0], z[1]));
        }
        match picks.len() {
            0 => bail!("no game given: pass a game file or a generator flag"),
            1 => {}
            _ => bail!("more than one game given: {}", picks.join(", ")),
        }
        let game = if let Some(p) = &self.game_file {
            Game::read(p)?
        } else if let Some(g) = self.illcond_gamma {
            make_illcond_game(g)?
        } else if self.matching_pennies {
            matching_pennies()
        } else if let Some(d) = self.identity {
            identity_game(d)?
        } else {
            let z = self.zero.as_ref().expect("checked above");
            zero_game(z[0], z[1])?
        };
        Ok((game, picks.remove(0)))
    }
}

/// Resolves a base-matrix name for the Monte Carlo commands: `zero<N>`,
/// `zero<N>x<M>`, `illcond<G>`, `identity<D>`, `mp`, or a JSON file path.
pub fn named_base(name: &str) -> Result<Game> {
    let parse_err = || format!("cannot parse base game `{name}`");
    if let Some(rest) = name.strip_prefix("zero") {
        let (n, m) = match rest.split_once('x') {
            Some((a, b)) => (a.parse().with_context(parse_err)?, b.parse().with_context(parse_err)?),
            None => {
                let n = rest.parse().with_context(parse_err)?;
                (n, n)
            }
        };
        return Ok(zero_game(n, m)?);
    }
    if let Some(rest) = name.strip_prefix("illcond") {
        return Ok(make_illcond_game(rest.parse().with_context(parse_err)?)?);
    }
    if let Some(rest) = name.strip_prefix("identity") {
        return Ok(identity_game(rest.parse().with_context(parse_err)?)?);
    }
    if name == "mp" {
        return Ok(matching_pennies());
    }
    Ok(Game::read(name)?)
}
