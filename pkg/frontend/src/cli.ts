#!/usr/bin/env node
/** Figure regeneration CLI.
 *
 * Usage:
 *   fkplab-figures profiles --out fig.svg label=path.csv ...
 *   fkplab-figures time-series --column sup_norm --out fig.svg label=path.csv ...
 *   fkplab-figures crossing-times --factor 2 --param-label alpha --out fig.svg 1.5=path.csv ...
 *   fkplab-figures field-surface --out fig.svg path.fkps
 *   fkplab-figures growth-rate --out fig.svg label=path.csv ...
 *   fkplab-figures branch-omega --out fig.svg label=path.csv ...
 */

import { readFileSync, writeFileSync } from "node:fs";

import {
  renderBranchOmega,
  renderCrossingTimes,
  renderFieldSurface,
  renderGrowthRate,
  renderProfiles,
  renderTimeSeries,
} from "./figures.js";

const FIGURES = [
  "profiles",
  "time-series",
  "crossing-times",
  "field-surface",
  "growth-rate",
  "branch-omega",
];

interface Args {
  figure: string;
  out: string;
  column: string;
  factor: number;
  paramLabel: string;
  inputs: string[];
}

function parseArgs(argv: string[]): Args {
  const [figure, ...rest] = argv;
  if (!figure || !FIGURES.includes(figure)) {
    throw new Error(`figure must be one of: ${FIGURES.join(", ")}`);
  }
  const args: Args = {
    figure,
    out: "",
    column: "sup_norm",
    factor: 2,
    paramLabel: "parameter",
    inputs: [],
  };
  for (let i = 0; i < rest.length; i++) {
    const a = rest[i];
    const next = () => {
      if (i + 1 >= rest.length) {
        throw new Error(`${a} needs a value`);
      }
      return rest[++i];
    };
    if (a === "--out") {
      args.out = next();
    } else if (a === "--column") {
      args.column = next();
    } else if (a === "--factor") {
      args.factor = Number(next());
    } else if (a === "--param-label") {
      args.paramLabel = next();
    } else if (a.startsWith("--")) {
      throw new Error(`unknown flag ${a}`);
    } else {
      args.inputs.push(a);
    }
  }
  if (!args.out) {
    throw new Error("--out is required");
  }
  if (args.inputs.length === 0) {
    throw new Error("at least one input file is required");
  }
  return args;
}

function labeled(inputs: string[]): { label: string; text: string }[] {
  return inputs.map((item) => {
    const eq = item.indexOf("=");
    const label = eq >= 0 ? item.slice(0, eq) : item;
    const path = eq >= 0 ? item.slice(eq + 1) : item;
    return { label, text: readFileSync(path, "utf8") };
  });
}

export function main(argv: string[]): number {
  let args: Args;
  try {
    args = parseArgs(argv);
  } catch (err) {
    process.stderr.write(`error: ${(err as Error).message}\n`);
    return 2;
  }
  try {
    let svg: string;
    switch (args.figure) {
      case "profiles":
        svg = renderProfiles(labeled(args.inputs));
        break;
      case "time-series":
        svg = renderTimeSeries(labeled(args.inputs), args.column);
        break;
      case "crossing-times":
        svg = renderCrossingTimes(
          args.inputs.map((item) => {
            const eq = item.indexOf("=");
            if (eq < 0) {
              throw new Error(`crossing-times inputs must be param=path, got ${item}`);
            }
            const param = Number(item.slice(0, eq));
            if (!Number.isFinite(param)) {
              throw new Error(`bad parameter value in ${item}`);
            }
            return { param, text: readFileSync(item.slice(eq + 1), "utf8") };
          }),
          args.factor,
          args.paramLabel,
        );
        break;
      case "field-surface":
        svg = renderFieldSurface(new Uint8Array(readFileSync(args.inputs[0])));
        break;
      case "growth-rate":
        svg = renderGrowthRate(labeled(args.inputs));
        break;
      default:
        svg = renderBranchOmega(labeled(args.inputs));
        break;
    }
    writeFileSync(args.out, svg);
  } catch (err) {
    process.stderr.write(`error: ${(err as Error).message}\n`);
    return 1;
  }
  return 0;
}

if (process.argv[1] && process.argv[1].endsWith("cli.js")) {
  process.exit(main(process.argv.slice(2)));
}
