/**
 * Global setup: boot the backend on a free port with a throwaway data
 * directory and two seeded users (an owner-to-be and a viewer), then hand
 * the base URL to the tests.
 */

import { execFileSync, spawn, type ChildProcess } from "node:child_process";
import { mkdtempSync, writeFileSync } from "node:fs";
import { createServer } from "node:net";
import { tmpdir } from "node:os";
import { join } from "node:path";
import type { TestProject } from "vitest/node";

declare module "vitest" {
  export interface ProvidedContext {
    baseUrl: string;
    ownerCredentials: { username: string; password: string };
    viewerCredentials: { username: string; password: string };
  }
}

const PYTHON = process.env.PYTHON ?? "python3";

function freePort(): Promise<number> {
  return new Promise((resolve, reject) => {
    const probe = createServer();
    probe.listen(0, "127.0.0.1", () => {
      const address = probe.address();
      if (address && typeof address === "object") {
        const port = address.port;
        probe.close(() => resolve(port));
      } else {
        reject(new Error("could not allocate a port"));
      }
    });
  });
}

async function waitForServer(url: string, timeoutMs = 20_000): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    try {
      await fetch(url);
      return; // any HTTP response (401 included) means the server is up
    } catch {
      await new Promise((r) => setTimeout(r, 200));
    }
  }
  throw new Error(`server at ${url} did not come up within ${timeoutMs}ms`);
}

let server: ChildProcess | undefined;

export default async function setup(project: TestProject): Promise<() => void> {
  const dir = mkdtempSync(join(tmpdir(), "life-e2e-"));
  const port = await freePort();
  const conf = join(dir, "life.conf");
  writeFileSync(
    conf,
    [
      `addr = 127.0.0.1:${port}`,
      `data_dir = ${join(dir, "data")}`,
      "base_iri = http://e2e.example.org/",
      "",
    ].join("\n"),
  );

  const cli = (...args: string[]) =>
    execFileSync(PYTHON, ["-m", "life.service.cli", "--config", conf, ...args], {
      stdio: "pipe",
    });
  cli("user", "add", "fielder", "--password", "owner pass phrase");
  cli("user", "add", "reader", "--password", "viewer pass phrase");

  server = spawn(PYTHON, ["-m", "life.service.cli", "--config", conf, "serve"], {
    stdio: ["ignore", "pipe", "pipe"],
  });
  const baseUrl = `http://127.0.0.1:${port}`;
  await waitForServer(`${baseUrl}/api/v1/projects`);

  project.provide("baseUrl", baseUrl);
  project.provide("ownerCredentials", { username: "fielder", password: "owner pass phrase" });
  project.provide("viewerCredentials", { username: "reader", password: "viewer pass phrase" });

  return () => {
    server?.kill();
  };
}
