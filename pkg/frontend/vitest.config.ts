import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    // every test shells out to the CLI, which pays Python startup cost
    testTimeout: 180_000,
    hookTimeout: 180_000,
  },
});
