import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    // Monte-Carlo sweeps spawn the codec CLI and can run for minutes
    testTimeout: 300_000,
    hookTimeout: 60_000,
  },
});
