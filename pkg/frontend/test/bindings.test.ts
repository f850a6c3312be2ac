import { spawnSync } from "node:child_process";
import { mkdtempSync, readFileSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, describe, expect, it } from "vitest";

import { boundDiagram, boundFeaturize, phtopBin } from "../src/index.js";

/** Idealized benzene: carbon hexagon, hydrogens radially outward. */
function benzeneCoords(): number[][] {
  const cc = 1.39904296;
  const ch = 1.08233905;
  const rows: number[][] = [];
  for (let k = 0; k < 6; k++) {
    const t = (k * Math.PI) / 3;
    rows.push([cc * Math.cos(t), cc * Math.sin(t), 0]);
  }
  for (let k = 0; k < 6; k++) {
    const t = (k * Math.PI) / 3;
    rows.push([(cc + ch) * Math.cos(t), (cc + ch) * Math.sin(t), 0]);
  }
  return rows;
}

const workDir = mkdtempSync(join(tmpdir(), "phtop-parity-"));
afterAll(() => rmSync(workDir, { recursive: true, force: true }));

function runCliDirect(args: string[]): string {
  const res = spawnSync(phtopBin(), args, { encoding: "utf-8" });
  expect(res.status, res.stderr).toBe(0);
  return res.stdout;
}

function writeBenzeneCsv(): string {
  // String(x) keeps exact doubles, so the direct CLI run and the bindings
  // feed identical inputs
  const path = join(workDir, "benzene.csv");
  const body = benzeneCoords()
    .map((r) => r.map(String).join(","))
    .join("\n");
  writeFileSync(path, "x,y,z\n" + body + "\n");
  return path;
}

describe("boundDiagram", () => {
  it("matches the CLI diagram JSON for the benzene fixture exactly", () => {
    const viaBindings = boundDiagram(benzeneCoords());
    const out = join(workDir, "benzene.json");
    runCliDirect(["diagram", "--input", writeBenzeneCsv(), "--output", out, "--format", "csv"]);
    const viaCli = JSON.parse(readFileSync(out, "utf-8")) as {
      points: { birth: number; death: number; dim: number }[];
      essential_dropped: number;
    };

    expect(viaBindings).toHaveLength(13);
    expect(viaCli.essential_dropped).toBe(1);
    expect(viaBindings).toStrictEqual(
      viaCli.points.map(({ birth, death, dim }) => ({ birth, death, dim })),
    );
    const h0 = viaBindings.filter((p) => p.dim === 0);
    expect(h0).toHaveLength(11);
  });

  it("returns an empty list for a single point", () => {
    expect(boundDiagram([[0, 0, 0]])).toStrictEqual([]);
  });

  it("is unchanged under mirroring", () => {
    const chiral = [
      [0, 0, 0],
      [1, 0, 0],
      [0, 1.3, 0],
      [0.2, 0.4, 1.7],
    ];
    const mirrored = chiral.map(([x, y, z]) => [x, y, -z]);
    expect(boundDiagram(mirrored)).toStrictEqual(boundDiagram(chiral));
  });

  it("rejects malformed coordinates", () => {
    expect(() => boundDiagram([])).toThrow(/non-empty/);
    expect(() => boundDiagram([[1, 2]])).toThrow(/3 components/);
    expect(() => boundDiagram([[1, 2, Number.NaN]])).toThrow(/finite/);
  });
});

describe("boundFeaturize", () => {
  it("equals the CLI feature row for benzene at full precision", () => {
    const viaBindings = boundFeaturize(benzeneCoords(), { layout: "paper18" });
    const out = join(workDir, "features.csv");
    runCliDirect([
      "featurize",
      "--input",
      writeBenzeneCsv(),
      "--layout",
      "paper18",
      "--output",
      out,
      "--format",
      "csv",
    ]);
    const lines = readFileSync(out, "utf-8").trim().split("\n");
    const viaCli = lines[1].split(",").slice(1).map(Number);

    expect(viaBindings).toHaveLength(18);
    // both sides parse the CLI's 12-significant-digit decimals, so the
    // comparison is exact, not approximate
    expect(viaBindings).toStrictEqual(viaCli);
    console.log("ACCEPTANCE 10: PASS - bindings parity with CLI outputs");
  });

  it("uses the CLI defaults when options are empty", () => {
    const coords = [
      [0, 0, 0],
      [1, 0, 0],
      [1, 1, 0],
      [0, 1, 0],
    ];
    expect(boundFeaturize(coords)).toStrictEqual(boundFeaturize(coords, { layout: "paper18" }));
  });

  it("supports the full layout size contract", () => {
    const coords = benzeneCoords();
    const vec = boundFeaturize(coords, { layout: "full", resolution: 2 });
    expect(vec).toHaveLength(12 + 3 * 4);
  });

  it("surfaces bad layouts as native exceptions with the CLI message", () => {
    expect(() => boundFeaturize([[0, 0, 0]], { layout: "gigantic" })).toThrow(
      /layout|Invalid value/,
    );
  });
});
