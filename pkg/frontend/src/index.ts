#!/usr/bin/env node
/**
 * plotkit --csv <files...> --out fig.svg [--layout fixed,anytime] [--zoom N]
 *
 * Renders the four-panel mean/percentile figure from experiment CSVs.  The
 * experiment kind per file (fixed-horizon vs anytime trajectory) is inferred
 * from the number of distinct horizons and can be pinned with --layout.
 * Output is SVG; a .png path needs the optional sharp dependency.
 */

import * as fs from 'node:fs';
import { parseCsv, SchemaError } from './csv.js';
import { FigureSpec, renderFigure } from './figure.js';

interface Args {
  csv: string[];
  out: string;
  layout: string[];
  zoom: number;
}

function parseArgs(argv: string[]): Args {
  const args: Args = { csv: [], out: '', layout: [], zoom: 1000 };
  let i = 0;
  while (i < argv.length) {
    const a = argv[i];
    if (a === '--csv') {
      i++;
      while (i < argv.length && !argv[i].startsWith('--')) args.csv.push(argv[i++]);
    } else if (a === '--out') {
      args.out = argv[++i];
      i++;
    } else if (a === '--layout') {
      args.layout = argv[++i].split(',');
      i++;
    } else if (a === '--zoom') {
      args.zoom = Number(argv[++i]);
      i++;
    } else {
      throw new UsageError(`unknown argument: ${a}`);
    }
  }
  if (args.csv.length === 0 || !args.out) {
    throw new UsageError('usage: plotkit --csv <files...> --out fig.svg');
  }
  for (const l of args.layout) {
    if (l !== 'fixed-horizon' && l !== 'anytime') {
      throw new UsageError(`--layout entries must be fixed-horizon|anytime, got ${l}`);
    }
  }
  return args;
}

class UsageError extends Error {}

export async function run(argv: string[]): Promise<number> {
  let args: Args;
  try {
    args = parseArgs(argv);
  } catch (e) {
    console.error((e as Error).message);
    return 2;
  }
  try {
    const spec: FigureSpec = {
      inputs: args.csv.map((path, i) => ({
        name: path,
        rows: parseCsv(fs.readFileSync(path, 'utf-8'), path),
        kind: args.layout[i] as 'fixed-horizon' | 'anytime' | undefined,
      })),
      zoomWindow: args.zoom,
    };
    const svg = renderFigure(spec);
    if (args.out.endsWith('.png')) {
      try {
        const sharp = (await import('sharp' as string)).default;
        await sharp(Buffer.from(svg)).png().toFile(args.out);
      } catch (e) {
        if ((e as NodeJS.ErrnoException).code === 'ERR_MODULE_NOT_FOUND') {
          console.error(
            'PNG output needs the optional sharp dependency ' +
              '(npm install sharp); write an .svg instead',
          );
          return 1;
        }
        throw e;
      }
    } else {
      fs.writeFileSync(args.out, svg);
    }
    console.log(`wrote ${args.out}`);
    return 0;
  } catch (e) {
    if (e instanceof SchemaError) {
      console.error(`schema error: ${e.message}`);
    } else {
      console.error((e as Error).message);
    }
    return 1;
  }
}

const isMain = process.argv[1] &&
  import.meta.url === new URL(`file://${process.argv[1]}`).href;
if (isMain) {
  run(process.argv.slice(2)).then((code) => {
    process.exitCode = code;
  });
}
