mod algebra;
mod birkhoff;
mod model;
mod negative;

use treealg::linear::parse_q;
use treealg::Q;

use crate::args::{Cli, Command};
use crate::config::Context;
use crate::output::{CliError, Outcome};

pub fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    let ctx = Context::load(cli.config.as_deref())?;
    let cutoff = cli.cutoff.as_deref().map(rational).transpose()?;
    match &cli.command {
        Command::Coprod { tree, mode } => algebra::coprod(&ctx, tree, mode, cutoff),
        Command::Antipode { tree, mode } => algebra::antipode(&ctx, tree, mode, cutoff),
        Command::Target { op } => algebra::target(&ctx, op),
        Command::Birkhoff(args) => birkhoff::run(&ctx, args),
        Command::Model { op } => model::run(&ctx, op),
        Command::Negative { op } => negative::run(&ctx, op),
        Command::Verify { which } => algebra::verify(which, cli.seed),
    }
}

pub(crate) fn rational(s: &str) -> Result<Q, CliError> {
    parse_q(s).ok_or_else(|| CliError::Usage(format!("`{s}` is not a rational number")))
}
