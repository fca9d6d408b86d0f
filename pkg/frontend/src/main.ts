/**
 * Browser entry point: build the app against the page's own origin (or
 * an origin named in window.PLAYCALL_API_BASE) once the DOM is ready.
 */

import { ApiClient } from './api.js';
import { AdvisorApp } from './app.js';

declare global {
  interface Window {
    PLAYCALL_API_BASE?: string;
  }
}

const api = new ApiClient(window.PLAYCALL_API_BASE ?? '');
const app = new AdvisorApp(document, api);

if (document.readyState === 'loading') {
  document.addEventListener('DOMContentLoaded', () => void app.init());
} else {
  void app.init();
}
