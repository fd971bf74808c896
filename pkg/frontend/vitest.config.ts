import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    include: ["tests/**/*.test.ts"],
    environment: "node",
    // the boundary suite spawns the python service and times real HTTP
    // calls; keep files sequential so the budget measurement is quiet
    fileParallelism: false,
    testTimeout: 60_000,
    hookTimeout: 60_000,
  },
});
