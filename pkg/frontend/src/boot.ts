import { setupExplorer } from "./main.js";

// Browser entry point; tests import setupExplorer directly instead.
setupExplorer(document, (url) => fetch(url));
