#!/usr/bin/env node
import { pathToFileURL } from 'url';
import yargs from 'yargs';

import { figureSpec } from './figures.js';
import { renderFigure } from './render.js';

/** Run the CLI against argv (without the node/script prefix); returns the exit code. */
export function runCli(argv: string[]): number {
  let parsed;
  try {
    parsed = yargs(argv)
      .usage('$0 render --fig {1|2|3} --in <csv> --out <img>')
      .command('render', 'render one experiment CSV as an SVG figure', (y) => y
        .option('fig', { type: 'number', demandOption: true, choices: [1, 2, 3],
                         describe: 'figure id' })
        .option('in', { type: 'string', demandOption: true,
                        describe: 'input CSV from the experiment harness' })
        .option('out', { type: 'string', demandOption: true,
                         describe: 'output SVG path' }))
      .demandCommand(1, 'a command is required')
      .strict()
      .exitProcess(false)
      .fail((msg, err) => { throw err ?? new Error(msg); })
      .parseSync();
  } catch (err) {
    console.error(`error: ${err instanceof Error ? err.message : err}`);
    return 2;
  }
  if (parsed._[0] !== 'render') {
    console.error(`error: unknown command "${parsed._[0]}"`);
    return 2;
  }
  try {
    const spec = figureSpec(parsed.fig as number, parsed.in as string,
                            parsed.out as string);
    renderFigure(spec);
  } catch (err) {
    console.error(`error: ${err instanceof Error ? err.message : err}`);
    return 1;
  }
  return 0;
}

if (import.meta.url === pathToFileURL(process.argv[1]).href) {
  process.exit(runCli(process.argv.slice(2)));
}
