import { defineConfig } from 'vitest/config';

export default defineConfig({
  test: {
    // node by default; the DOM suite opts into jsdom per file
    environment: 'node',
    include: ['tests/**/*.test.ts'],
    testTimeout: 10000,
  },
});
