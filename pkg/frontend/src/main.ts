// Entry point: session id comes from ?session=<id> (or a prompt).

import { AnnotationApp } from './app';

function sessionIdFromLocation(): string | null {
  const params = new URLSearchParams(window.location.search);
  return params.get('session');
}

const root = document.getElementById('app');
if (root) {
  const sessionId = sessionIdFromLocation() ?? window.prompt('session id?');
  if (sessionId) {
    const app = new AnnotationApp({ root, sessionId });
    void app.start();
  } else {
    root.textContent = 'no session id given (use ?session=<judge>)';
  }
}
