import { ServiceClient } from "./api.js";
import { App } from "./ui.js";

const params = new URLSearchParams(window.location.search);
const baseUrl = params.get("service") ?? "http://127.0.0.1:8765";

const app = new App(new ServiceClient(baseUrl));
app.wire();
