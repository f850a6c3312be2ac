/**
 * Node bindings for the phtop persistent-homology featurizer.
 *
 * Coordinates in, numbers out. Every result is produced by the phtop CLI
 * through its documented interfaces (coordinate CSV in, diagram JSON or
 * feature CSV out); no topology is reimplemented here, so outputs agree
 * with direct CLI invocations byte for byte.
 */

import { spawnSync } from "node:child_process";
import { mkdtempSync, readFileSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

export interface DiagramPoint {
  birth: number;
  death: number;
  dim: number;
}

export interface FeaturizeOptions {
  /** "paper18" (18 values) or "full" (12 + 3*R^2 values). */
  layout?: string;
  /** Filtration cutoff in Angstrom, or "auto" (the default). */
  threshold?: number | "auto";
  /** Highest homology dimension tracked (0..2). */
  maxDim?: number;
  /** Persistence image resolution for the "full" layout. */
  resolution?: number;
  /** Persistence image Gaussian bandwidth. */
  sigma?: number;
  /** Entropy logarithm base. */
  logBase?: "2" | "e";
  /** Wasserstein amplitude order p. */
  wassersteinOrder?: number;
}

export interface DiagramOptions {
  threshold?: number | "auto";
  maxDim?: number;
}

/** Path of the CLI executable; override with the PHTOP_BIN env var. */
export const phtopBin = (): string => process.env.PHTOP_BIN ?? "phtop";

function checkCoordinates(coords: ReadonlyArray<ReadonlyArray<number>>): void {
  if (!Array.isArray(coords) || coords.length < 1) {
    throw new Error("coordinates must be a non-empty array of [x, y, z] rows");
  }
  for (const row of coords) {
    if (!Array.isArray(row) || row.length !== 3) {
      throw new Error("every coordinate row must have exactly 3 components");
    }
    for (const v of row) {
      if (typeof v !== "number" || !Number.isFinite(v)) {
        throw new Error("coordinates must be finite numbers");
      }
    }
  }
}

function writeCoordsCsv(dir: string, coords: ReadonlyArray<ReadonlyArray<number>>): string {
  // String(number) is the shortest round-trip decimal, so the CLI parses
  // back the exact same doubles
  const path = join(dir, "cloud.csv");
  const body = coords.map((r) => r.map(String).join(",")).join("\n");
  writeFileSync(path, "x,y,z\n" + body + "\n");
  return path;
}

function runCli(args: string[]): string {
  const res = spawnSync(phtopBin(), args, { encoding: "utf-8" });
  if (res.error) {
    throw new Error(`failed to run ${phtopBin()}: ${res.error.message}`);
  }
  if (res.status !== 0) {
    const detail = (res.stderr || res.stdout || "").trim();
    throw new Error(`phtop ${args[0]} exited with ${res.status}: ${detail}`);
  }
  return res.stdout;
}

function inTempDir<T>(fn: (dir: string) => T): T {
  const dir = mkdtempSync(join(tmpdir(), "phtop-"));
  try {
    return fn(dir);
  } finally {
    rmSync(dir, { recursive: true, force: true });
  }
}

function commonFlags(opts: { threshold?: number | "auto"; maxDim?: number }): string[] {
  const flags: string[] = [];
  if (opts.threshold !== undefined) flags.push("--threshold", String(opts.threshold));
  if (opts.maxDim !== undefined) flags.push("--max-dim", String(opts.maxDim));
  return flags;
}

/**
 * Persistence diagram of a point cloud: finite classes as
 * (birth, death, dim) records, computed with an auto threshold unless
 * overridden. Matches `phtop diagram` exactly.
 */
export function boundDiagram(
  coords: ReadonlyArray<ReadonlyArray<number>>,
  options: DiagramOptions = {},
): DiagramPoint[] {
  checkCoordinates(coords);
  return inTempDir((dir) => {
    const input = writeCoordsCsv(dir, coords);
    const output = join(dir, "diagram.json");
    runCli([
      "diagram",
      "--input",
      input,
      "--output",
      output,
      "--format",
      "csv",
      ...commonFlags(options),
    ]);
    const parsed = JSON.parse(readFileSync(output, "utf-8")) as {
      points: DiagramPoint[];
    };
    return parsed.points.map(({ birth, death, dim }) => ({ birth, death, dim }));
  });
}

/**
 * PHF feature vector of a point cloud. Defaults are exactly the CLI
 * defaults (paper18 layout, auto threshold); the result equals the row
 * `phtop featurize` writes for the same input.
 */
export function boundFeaturize(
  coords: ReadonlyArray<ReadonlyArray<number>>,
  options: FeaturizeOptions = {},
): number[] {
  checkCoordinates(coords);
  return inTempDir((dir) => {
    const input = writeCoordsCsv(dir, coords);
    const output = join(dir, "features.csv");
    const flags = commonFlags(options);
    if (options.layout !== undefined) flags.push("--layout", options.layout);
    if (options.resolution !== undefined) flags.push("--resolution", String(options.resolution));
    if (options.sigma !== undefined) flags.push("--sigma", String(options.sigma));
    if (options.logBase !== undefined) flags.push("--log-base", options.logBase);
    if (options.wassersteinOrder !== undefined) {
      flags.push("--order", String(options.wassersteinOrder));
    }
    runCli(["featurize", "--input", input, "--output", output, "--format", "csv", ...flags]);
    const lines = readFileSync(output, "utf-8").trim().split("\n");
    if (lines.length !== 2) {
      throw new Error(`expected one feature row, got ${lines.length - 1}`);
    }
    return lines[1].split(",").slice(1).map(Number);
  });
}
